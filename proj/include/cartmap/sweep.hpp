#pragma once

#include <iosfwd>

#include "cartmap/evalcost.hpp"
#include "cartmap/mappers.hpp"

namespace cartmap {

// Instance set swept by the benchmark harness: every (node count,
// processes per node, dimension count) combination, with the grid built by
// dims_create. Defaults reproduce the 144-instance evaluation set.
struct SweepSpec {
  std::vector<i64> node_counts;
  std::vector<i64> procs_per_node;
  std::vector<int> dims_set;
  std::vector<std::string> stencils;
  std::uint64_t seed = 1;

  static SweepSpec defaults();
};

struct SweepRow {
  std::string algorithm;
  std::string stencil;
  int d = 0;
  i64 node_count = 0;
  i64 procs_per_node = 0;
  i64 p = 0;
  std::vector<i64> dims;
  std::optional<i64> j_sum, j_max, j_sum_blocked, j_max_blocked;
  std::optional<double> reduction_sum, reduction_max;
  std::string flags;
};

std::vector<SweepRow> run_sweep(const SweepSpec &spec);

struct MedianEntry {
  std::string algorithm;
  std::string stencil;
  double reduction_sum = 0.0;
  double reduction_max = 0.0;
};

// Median reductions over the instances, per (algorithm, stencil), skipping
// rows without values.
std::vector<MedianEntry> sweep_medians(const std::vector<SweepRow> &rows);

// CSV with a header row, one row per (instance, stencil, algorithm) and
// '#'-prefixed median footer lines. Byte-identical for identical inputs.
void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);

} // namespace cartmap
