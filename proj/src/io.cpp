#include "cartmap/io.hpp"

#include <fstream>
#include <sstream>

#include "cartmap/evalcost.hpp"
#include "json.hpp"

namespace cartmap::io {

using nlohmann::json;

namespace {

Stencil stencil_from_json(const json &j) {
  if (!j.contains("ndims") || !j.contains("offsets"))
    throw validation_error("stencil JSON needs 'ndims' and 'offsets'");
  const int d = j.at("ndims").get<int>();
  std::vector<Coord> offsets;
  for (const auto &row : j.at("offsets")) {
    Coord off = row.get<Coord>();
    if (static_cast<int>(off.size()) != d)
      throw validation_error("stencil offset " + std::to_string(offsets.size()) +
                             " does not have ndims entries");
    offsets.push_back(std::move(off));
  }
  return Stencil(std::move(offsets));
}

json stencil_to_json_value(const Stencil &s) {
  return json{{"ndims", s.ndims()}, {"offsets", s.offsets}};
}

} // namespace

Stencil parse_stencil_json(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw validation_error(std::string("malformed stencil JSON: ") + e.what());
  }
  return stencil_from_json(j);
}

Stencil load_stencil_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("cannot open stencil file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_stencil_json(buf.str());
}

std::string stencil_to_json(const Stencil &s) {
  return stencil_to_json_value(s).dump();
}

void write_mapping(std::ostream &os, const InstanceSpec &spec,
                   const RankMapping &m) {
  json header{
      {"algorithm", spec.algorithm},
      {"dims", spec.grid.dims},
      {"periods", spec.grid.periods},
      {"offsets", spec.stencil.offsets},
      {"node_sizes", spec.nodes.sizes},
      {"aggregate", std::string(to_string(spec.nodes.rule))},
      {"flags", spec.flags},
      {"fingerprint",
       instance_fingerprint(spec.grid, spec.stencil, spec.nodes)},
  };
  if (spec.seed)
    header["seed"] = *spec.seed;
  else
    header["seed"] = nullptr;
  os << "# " << header.dump() << "\n";
  const i64 p = spec.grid.size();
  for (i64 r = 0; r < p; ++r)
    os << r << " " << new_rank_of(spec.grid, m, r) << "\n";
}

LoadedMapping read_mapping(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
    throw validation_error("mapping file must start with a '#' header line");
  json header;
  try {
    header = json::parse(line.substr(1));
  } catch (const json::exception &e) {
    throw validation_error(std::string("malformed mapping header: ") + e.what());
  }

  try {
    Grid grid(header.at("dims").get<std::vector<i64>>(),
              header.value("periods", std::vector<bool>{}));
    Stencil stencil = stencil_from_json(
        json{{"ndims", grid.ndims()}, {"offsets", header.at("offsets")}});
    NodeConfig nodes(header.at("node_sizes").get<std::vector<i64>>(),
                     aggregate_rule_from_string(
                         header.value("aggregate", std::string("mean"))));
    if (nodes.total() != grid.size())
      throw validation_error("node sizes in header do not sum to grid size");

    const std::string fp = header.value("fingerprint", std::string());
    if (fp != instance_fingerprint(grid, stencil, nodes))
      throw validation_error("header fingerprint does not match the instance");

    InstanceSpec spec{std::move(grid), std::move(stencil), std::move(nodes),
                      header.value("algorithm", std::string("unknown")),
                      std::nullopt, header.value("flags", std::string())};
    if (header.contains("seed") && !header.at("seed").is_null())
      spec.seed = header.at("seed").get<std::uint64_t>();

    const i64 p = spec.grid.size();
    RankMapping m;
    m.algorithm = spec.algorithm;
    m.seed = spec.seed;
    m.new_coord.assign(p, Coord{});
    i64 lines = 0;
    while (std::getline(is, line)) {
      if (line.empty())
        continue;
      std::istringstream ls(line);
      i64 old_rank, new_rank;
      if (!(ls >> old_rank >> new_rank))
        throw validation_error("malformed mapping line: '" + line + "'");
      if (old_rank < 0 || old_rank >= p)
        throw validation_error("mapping names rank " + std::to_string(old_rank) +
                               " outside the grid");
      if (!m.new_coord[old_rank].empty())
        throw validation_error("rank " + std::to_string(old_rank) +
                               " mapped twice");
      m.new_coord[old_rank] = rank_to_coord(spec.grid, new_rank);
      ++lines;
    }
    if (lines != p)
      throw validation_error("mapping file has " + std::to_string(lines) +
                             " entries, expected " + std::to_string(p));
    return {std::move(spec), std::move(m)};
  } catch (const json::exception &e) {
    throw validation_error(std::string("malformed mapping header: ") + e.what());
  }
}

} // namespace cartmap::io
