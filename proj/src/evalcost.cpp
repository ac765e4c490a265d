#include "cartmap/evalcost.hpp"

#include <algorithm>
#include <limits>

namespace cartmap {

i64 owner_of(const NodeConfig &nodes, i64 rank) {
  if (rank >= 0) {
    i64 acc = 0;
    for (std::size_t i = 0; i < nodes.sizes.size(); ++i) {
      acc += nodes.sizes[i];
      if (rank < acc)
        return static_cast<i64>(i);
    }
  }
  throw validation_error("rank " + std::to_string(rank) +
                         " outside the node allocation");
}

std::vector<std::pair<i64, i64>> induced_edges(const Grid &g, const Stencil &s) {
  std::vector<std::pair<i64, i64>> edges;
  for_each_induced_edge(g, s, [&](i64 u, i64 v) { edges.emplace_back(u, v); });
  return edges;
}

CostReport evaluate(const Grid &g, const Stencil &s, const RankMapping &m,
                    const NodeConfig &nodes) {
  const i64 p = g.size();
  if (static_cast<i64>(m.new_coord.size()) != p)
    throw validation_error("mapping covers " +
                           std::to_string(m.new_coord.size()) +
                           " ranks, grid has " + std::to_string(p));
  if (nodes.total() != p)
    throw validation_error("node sizes must sum to the grid size");

  // Node owning each rank, then each grid cell through the mapping.
  std::vector<i64> rank_owner(p);
  {
    i64 r = 0;
    for (std::size_t i = 0; i < nodes.sizes.size(); ++i)
      for (i64 j = 0; j < nodes.sizes[i]; ++j)
        rank_owner[r++] = static_cast<i64>(i);
  }
  std::vector<i64> cell_owner(p, -1);
  for (i64 r = 0; r < p; ++r) {
    const i64 cell = coord_to_rank(g, m.new_coord[r]);
    if (cell_owner[cell] != -1)
      throw validation_error("mapping is not a bijection: grid position " +
                             std::to_string(cell) + " is assigned twice");
    cell_owner[cell] = rank_owner[r];
  }

  CostReport rep;
  rep.per_node.assign(nodes.node_count(), 0);
  for_each_induced_edge(g, s, [&](i64 u, i64 v) {
    if (cell_owner[u] != cell_owner[v]) {
      ++rep.j_sum;
      ++rep.per_node[cell_owner[u]];
    }
  });
  rep.j_max = 0;
  rep.bottleneck_node = 0;
  for (i64 i = 0; i < nodes.node_count(); ++i)
    if (rep.per_node[i] > rep.j_max) {
      rep.j_max = rep.per_node[i];
      rep.bottleneck_node = i;
    }
  rep.fingerprint = instance_fingerprint(g, s, nodes);
  return rep;
}

Reduction reduction(const CostReport &x, const CostReport &baseline) {
  if (x.fingerprint != baseline.fingerprint)
    throw validation_error("cost reports come from different instances");
  auto ratio = [](i64 a, i64 b) {
    if (b == 0)
      return a == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(a) / static_cast<double>(b);
  };
  return {ratio(x.j_sum, baseline.j_sum), ratio(x.j_max, baseline.j_max)};
}

namespace {

void feed(std::uint64_t &h, i64 v) {
  for (int b = 0; b < 8; ++b) {
    h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffu;
    h *= 0x100000001b3ull; // FNV-1a
  }
}

} // namespace

std::string instance_fingerprint(const Grid &g, const Stencil &s,
                                 const NodeConfig &nodes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  feed(h, g.ndims());
  for (i64 d : g.dims)
    feed(h, d);
  for (bool per : g.periods)
    feed(h, per ? 1 : 0);
  feed(h, s.neighbor_count());
  for (const Coord &off : s.offsets)
    for (i64 x : off)
      feed(h, x);
  feed(h, nodes.node_count());
  for (i64 sz : nodes.sizes)
    feed(h, sz);

  static const char *hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

} // namespace cartmap
