#pragma once

#include "cartmap/evalcost.hpp"
#include "cartmap/stencil.hpp"

namespace cartmap {

inline constexpr i64 kDefaultOracleLimit = 12;

struct OracleResult {
  i64 optimal_j_sum = 0;
  // Witness: node index per grid vertex (row-major), lexicographically
  // smallest among the optimal assignments.
  std::vector<i64> node_of_vertex;
  std::uint64_t nodes_expanded = 0;
};

// Exact minimum directed cut over every vertex-to-node assignment that
// respects the node sizes. Branch and bound in row-major vertex order with
// the committed cut count as bound; equal-size nodes are used in
// first-appearance order to prune symmetric assignments. Refuses grids
// with more than `limit` vertices.
OracleResult brute_force_optimal(const Grid &g, const Stencil &s,
                                 const std::vector<i64> &sizes,
                                 i64 limit = kDefaultOracleLimit);

// 3-WAY-PARTITION instance transformed into a grid mapping instance: a
// [3, sum/3] grid with a one-dimensional stencil along the second
// dimension, node sizes equal to the multiset, and the decision threshold
// q = 2*|multiset| - 6. A yes-instance admits a mapping of cost exactly q.
struct NpInstance {
  std::vector<i64> multiset;
  Grid grid;
  Stencil stencil;
  std::vector<i64> node_sizes;
  i64 q = 0;
};

NpInstance three_way_to_grid(const std::vector<i64> &multiset);

// Exhaustive 3-way partition decision, independent of the grid solver so
// the two cross-validate.
bool has_three_partition(const std::vector<i64> &multiset);

// Mapping whose blocked node ownership reproduces the given vertex-to-node
// assignment: node i's vertices (ascending) occupy its rank block in order.
RankMapping mapping_from_assignment(const Grid &g,
                                    const std::vector<i64> &node_of_vertex,
                                    const NodeConfig &nodes);

} // namespace cartmap
