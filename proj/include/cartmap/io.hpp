#pragma once

#include <filesystem>
#include <iosfwd>

#include "cartmap/mappers.hpp"

namespace cartmap::io {

// Everything the mapping-file header carries: the instance plus how the
// mapping was produced.
struct InstanceSpec {
  Grid grid;
  Stencil stencil;
  NodeConfig nodes;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::string flags;
};

// Stencil file schema: {"ndims": d, "offsets": [[...], ...]}.
Stencil load_stencil_json(const std::filesystem::path &path);
Stencil parse_stencil_json(const std::string &text);
std::string stencil_to_json(const Stencil &s);

// Mapping file: one '#'-prefixed JSON header line with the instance and its
// fingerprint, then one "old_rank new_rank" line per process.
void write_mapping(std::ostream &os, const InstanceSpec &spec,
                   const RankMapping &m);

struct LoadedMapping {
  InstanceSpec spec;
  RankMapping mapping;
};

LoadedMapping read_mapping(std::istream &is);

} // namespace cartmap::io
