#pragma once

#include <string_view>
#include <vector>

#include "cartmap/grid.hpp"

namespace cartmap {

// k-neighborhood: the set of relative offsets a process communicates with.
// Offsets are pairwise distinct and never the zero vector.
struct Stencil {
  std::vector<Coord> offsets;

  explicit Stencil(std::vector<Coord> offsets);

  int ndims() const { return offsets.empty() ? 0 : static_cast<int>(offsets[0].size()); }
  i64 neighbor_count() const { return static_cast<i64>(offsets.size()); }
};

// Builtin families:
//   "nn" / "nearest-neighbor"  +-1 along every dimension
//   "component"                +-1 along every dimension but the last
//   "nn-hops"                  nn plus +-2 and +-3 along dimension 0
Stencil builtin_stencil(std::string_view name, int ndims);

// Flattened offset list, one row of `ndims` entries per neighbor.
Stencil parse_flat(int ndims, i64 k, const std::vector<i64> &flat);
std::vector<i64> flatten(const Stencil &s);

// Per dimension, the summed squared direction cosines of all offsets
// against that axis. Entries sum to k.
std::vector<double> cosine_preference(const Stencil &s);

// f_j: how many offsets have a nonzero component along dimension j.
std::vector<i64> comm_weights(const Stencil &s);

// e_i: spread (max - min) of the offset components along dimension i.
std::vector<i64> extensions(const Stencil &s);

struct DimStats {
  std::vector<double> cosine_pref;
  std::vector<i64> comm_weight;
  std::vector<i64> extension;
};

DimStats dim_stats(const Stencil &s);

} // namespace cartmap
