#include "cartmap/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace cartmap {

namespace {

struct Searcher {
  // neighbors with lower vertex index, with the number of directed edges
  // between the pair (both directions)
  std::vector<std::vector<std::pair<i64, i64>>> lower_adj;
  std::vector<i64> assign, capacity, used;
  std::vector<i64> same_size_prev; // previous node of equal size, or -1
  i64 best = 0;
  std::vector<i64> best_assign;
  std::uint64_t expanded = 0;

  void dfs(std::size_t v, i64 cost) {
    ++expanded;
    if (cost >= best)
      return;
    if (v == assign.size()) {
      best = cost;
      best_assign = assign;
      return;
    }
    for (std::size_t j = 0; j < capacity.size(); ++j) {
      if (capacity[j] == 0)
        continue;
      // a node opens only after every equal-size node before it
      if (used[j] == 0 && same_size_prev[j] >= 0 &&
          used[same_size_prev[j]] == 0)
        continue;
      i64 add = 0;
      for (const auto &[u, cnt] : lower_adj[v])
        if (assign[u] != static_cast<i64>(j))
          add += cnt;
      if (cost + add >= best)
        continue;
      assign[v] = static_cast<i64>(j);
      --capacity[j];
      ++used[j];
      dfs(v + 1, cost + add);
      assign[v] = -1;
      ++capacity[j];
      --used[j];
    }
  }
};

} // namespace

OracleResult brute_force_optimal(const Grid &g, const Stencil &s,
                                 const std::vector<i64> &sizes, i64 limit) {
  const i64 p = g.size();
  if (p > limit)
    throw refusal_error("instance has " + std::to_string(p) +
                        " processes but the exact solver is limited to " +
                        std::to_string(limit) +
                        "; raise the limit to force the search");
  if (std::accumulate(sizes.begin(), sizes.end(), i64{0}) != p)
    throw validation_error("node sizes must sum to the grid size");
  for (i64 sz : sizes)
    if (sz < 1)
      throw validation_error("node sizes must be positive");

  Searcher search;
  search.lower_adj.resize(p);
  for_each_induced_edge(g, s, [&](i64 u, i64 v) {
    if (u == v)
      return; // periodic self-edge, never cut
    const i64 lo = std::min(u, v), hi = std::max(u, v);
    search.lower_adj[hi].emplace_back(lo, 1);
  });
  for (auto &adj : search.lower_adj) {
    std::sort(adj.begin(), adj.end());
    std::vector<std::pair<i64, i64>> merged;
    for (const auto &[u, cnt] : adj) {
      if (!merged.empty() && merged.back().first == u)
        merged.back().second += cnt;
      else
        merged.emplace_back(u, cnt);
    }
    adj = std::move(merged);
  }

  const i64 nnodes = static_cast<i64>(sizes.size());
  search.assign.assign(p, -1);
  search.capacity = sizes;
  search.used.assign(nnodes, 0);
  search.same_size_prev.assign(nnodes, -1);
  for (i64 j = 1; j < nnodes; ++j)
    for (i64 i = j - 1; i >= 0; --i)
      if (sizes[i] == sizes[j]) {
        search.same_size_prev[j] = i;
        break;
      }

  // Safe upper bound: every directed edge cut, plus one so a full
  // assignment of that cost still improves on it.
  i64 total_edges = 0;
  for (const auto &adj : search.lower_adj)
    for (const auto &[u, cnt] : adj)
      total_edges += cnt;
  search.best = total_edges + 1;

  search.dfs(0, 0);

  return {search.best, std::move(search.best_assign), search.expanded};
}

NpInstance three_way_to_grid(const std::vector<i64> &multiset) {
  if (multiset.empty())
    throw validation_error("multiset must not be empty");
  for (i64 x : multiset)
    if (x < 1)
      throw validation_error("multiset entries must be positive");
  const i64 sum = std::accumulate(multiset.begin(), multiset.end(), i64{0});
  if (sum % 3 != 0)
    throw validation_error("multiset sum " + std::to_string(sum) +
                           " is not divisible by 3");
  if (multiset.size() < 3)
    throw validation_error("degenerate multiset: fewer than 3 elements "
                           "yields a negative threshold");
  Grid grid({3, sum / 3});
  Stencil stencil({{0, -1}, {0, 1}});
  return {multiset, std::move(grid), std::move(stencil), multiset,
          2 * static_cast<i64>(multiset.size()) - 6};
}

namespace {

bool three_partition_rec(const std::vector<i64> &xs, std::size_t idx,
                         i64 target, i64 s0, i64 s1, i64 s2) {
  if (idx == xs.size())
    return s0 == target && s1 == target && s2 == target;
  const i64 x = xs[idx];
  return (s0 + x <= target &&
          three_partition_rec(xs, idx + 1, target, s0 + x, s1, s2)) ||
         (s1 + x <= target &&
          three_partition_rec(xs, idx + 1, target, s0, s1 + x, s2)) ||
         (s2 + x <= target &&
          three_partition_rec(xs, idx + 1, target, s0, s1, s2 + x));
}

} // namespace

bool has_three_partition(const std::vector<i64> &multiset) {
  if (multiset.empty())
    return false;
  const i64 sum = std::accumulate(multiset.begin(), multiset.end(), i64{0});
  if (sum % 3 != 0)
    return false;
  std::vector<i64> xs = multiset;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  // first element pinned to the first subset
  return three_partition_rec(xs, 1, sum / 3, xs[0], 0, 0);
}

RankMapping mapping_from_assignment(const Grid &g,
                                    const std::vector<i64> &node_of_vertex,
                                    const NodeConfig &nodes) {
  const i64 p = g.size();
  if (static_cast<i64>(node_of_vertex.size()) != p)
    throw validation_error("assignment covers the wrong number of vertices");
  if (nodes.total() != p)
    throw validation_error("node sizes must sum to the grid size");

  std::vector<i64> next_rank(nodes.node_count());
  {
    i64 acc = 0;
    for (i64 i = 0; i < nodes.node_count(); ++i) {
      next_rank[i] = acc;
      acc += nodes.sizes[i];
    }
  }
  RankMapping m;
  m.algorithm = "oracle-witness";
  m.new_coord.resize(p);
  std::vector<i64> remaining = nodes.sizes;
  for (i64 cell = 0; cell < p; ++cell) {
    const i64 node = node_of_vertex[cell];
    if (node < 0 || node >= nodes.node_count())
      throw validation_error("assignment names an unknown node");
    if (remaining[node]-- == 0)
      throw validation_error("assignment overfills node " +
                             std::to_string(node));
    m.new_coord[next_rank[node]++] = rank_to_coord(g, cell);
  }
  return m;
}

} // namespace cartmap
