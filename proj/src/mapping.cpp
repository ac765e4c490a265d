#include "cartmap/mapping.hpp"

#include <algorithm>
#include <numeric>

namespace cartmap {

AggregateRule aggregate_rule_from_string(std::string_view name) {
  if (name == "mean")
    return AggregateRule::mean;
  if (name == "min")
    return AggregateRule::min;
  if (name == "max")
    return AggregateRule::max;
  throw validation_error("unknown aggregate rule '" + std::string(name) +
                         "' (expected mean, min or max)");
}

std::string_view to_string(AggregateRule rule) {
  switch (rule) {
  case AggregateRule::mean:
    return "mean";
  case AggregateRule::min:
    return "min";
  case AggregateRule::max:
    return "max";
  }
  return "mean";
}

NodeConfig::NodeConfig(std::vector<i64> sizes_in, AggregateRule rule_in)
    : sizes(std::move(sizes_in)), rule(rule_in) {
  if (sizes.empty())
    throw validation_error("node configuration needs at least one node");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] < 1)
      throw validation_error("node " + std::to_string(i) +
                             " must host at least one process");
}

NodeConfig NodeConfig::homogeneous(i64 nodes, i64 per_node) {
  if (nodes < 1 || per_node < 1)
    throw validation_error("node count and node size must be positive");
  return NodeConfig(std::vector<i64>(nodes, per_node));
}

i64 NodeConfig::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), i64{0});
}

i64 NodeConfig::aggregate() const {
  i64 n = 0;
  switch (rule) {
  case AggregateRule::mean: {
    i64 sum = total(), cnt = node_count();
    n = sum / cnt + (2 * (sum % cnt) >= cnt ? 1 : 0); // round half up
    break;
  }
  case AggregateRule::min:
    n = *std::min_element(sizes.begin(), sizes.end());
    break;
  case AggregateRule::max:
    n = *std::max_element(sizes.begin(), sizes.end());
    break;
  }
  return std::max<i64>(n, 1);
}

bool is_bijection(const Grid &g, const RankMapping &m) {
  const i64 p = g.size();
  if (static_cast<i64>(m.new_coord.size()) != p)
    return false;
  std::vector<char> seen(p, 0);
  for (const Coord &c : m.new_coord) {
    if (static_cast<int>(c.size()) != g.ndims())
      return false;
    i64 r = 0;
    for (int i = 0; i < g.ndims(); ++i) {
      if (c[i] < 0 || c[i] >= g.dims[i])
        return false;
      r = r * g.dims[i] + c[i];
    }
    if (seen[r])
      return false;
    seen[r] = 1;
  }
  return true;
}

i64 new_rank_of(const Grid &g, const RankMapping &m, i64 old_rank) {
  if (old_rank < 0 || old_rank >= static_cast<i64>(m.new_coord.size()))
    throw validation_error("rank out of range");
  return coord_to_rank(g, m.new_coord[old_rank]);
}

} // namespace cartmap
