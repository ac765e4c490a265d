#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartmap/grid.hpp"

namespace cartmap {

enum class AggregateRule { mean, min, max };

AggregateRule aggregate_rule_from_string(std::string_view name);
std::string_view to_string(AggregateRule rule);

// The scheduler's allocation: node i hosts the sizes[i] consecutive ranks
// starting at the prefix sum. `rule` selects the single node size handed
// to algorithms that need one when nodes are heterogeneous.
struct NodeConfig {
  std::vector<i64> sizes;
  AggregateRule rule = AggregateRule::mean;

  NodeConfig(std::vector<i64> sizes, AggregateRule rule = AggregateRule::mean);
  static NodeConfig homogeneous(i64 nodes, i64 per_node);

  i64 node_count() const { return static_cast<i64>(sizes.size()); }
  i64 total() const;

  // Aggregate node size n: rule applied to sizes, rounded to nearest, >= 1.
  i64 aggregate() const;
};

// A rank reordering: new_coord[r] is the grid position the original rank r
// moves to. Valid mappings are bijections onto the grid.
struct RankMapping {
  std::vector<Coord> new_coord;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
};

bool is_bijection(const Grid &g, const RankMapping &m);
i64 new_rank_of(const Grid &g, const RankMapping &m, i64 old_rank);

// One recursion step of a bisection-style mapper, for inspecting the
// guarantees the splits must uphold.
struct SplitRecord {
  int dim;
  i64 left_size;
  i64 right_size;
  bool went_left;
};

struct SplitTrace {
  std::vector<SplitRecord> splits;
};

} // namespace cartmap
