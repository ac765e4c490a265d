#include "cartmap/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

namespace cartmap {

SweepSpec SweepSpec::defaults() {
  return {{10, 13, 16, 19, 22, 25, 28, 31},
          {10, 13, 16, 19, 22, 25, 28, 31, 32},
          {2, 3},
          {"nn", "component", "nn-hops"},
          1};
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
  std::vector<SweepRow> rows;
  for (i64 nnodes : spec.node_counts) {
    for (i64 per_node : spec.procs_per_node) {
      for (int d : spec.dims_set) {
        const i64 p = nnodes * per_node;
        const Grid grid(dims_create(p, d));
        const NodeConfig nodes = NodeConfig::homogeneous(nnodes, per_node);
        for (const std::string &sname : spec.stencils) {
          SweepRow base;
          base.stencil = sname;
          base.d = d;
          base.node_count = nnodes;
          base.procs_per_node = per_node;
          base.p = p;
          base.dims = grid.dims;

          std::optional<Stencil> stencil;
          try {
            stencil = builtin_stencil(sname, d);
          } catch (const validation_error &) {
            // e.g. the component stencil at d = 1
            for (std::string_view algo : kAlgorithms) {
              SweepRow row = base;
              row.algorithm = std::string(algo);
              row.flags = "stencil_empty_skipped";
              rows.push_back(std::move(row));
            }
            continue;
          }

          const auto runs = run_all(grid, *stencil, nodes, spec.seed);
          const CostReport blocked_report =
              evaluate(grid, *stencil, *runs.front().mapping, nodes);
          for (const AlgoRun &run : runs) {
            SweepRow row = base;
            row.algorithm = run.algorithm;
            row.flags = run.flag;
            if (run.mapping) {
              const CostReport rep =
                  evaluate(grid, *stencil, *run.mapping, nodes);
              const Reduction red = reduction(rep, blocked_report);
              row.j_sum = rep.j_sum;
              row.j_max = rep.j_max;
              row.j_sum_blocked = blocked_report.j_sum;
              row.j_max_blocked = blocked_report.j_max;
              row.reduction_sum = red.sum_ratio;
              row.reduction_max = red.max_ratio;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

std::vector<MedianEntry> sweep_medians(const std::vector<SweepRow> &rows) {
  std::map<std::pair<std::string, std::string>,
           std::pair<std::vector<double>, std::vector<double>>>
      buckets;
  std::vector<std::pair<std::string, std::string>> order;
  for (const SweepRow &row : rows) {
    const auto key = std::make_pair(row.algorithm, row.stencil);
    if (!buckets.count(key))
      order.push_back(key);
    auto &bucket = buckets[key];
    if (row.reduction_sum)
      bucket.first.push_back(*row.reduction_sum);
    if (row.reduction_max)
      bucket.second.push_back(*row.reduction_max);
  }
  auto median = [](std::vector<double> xs) {
    if (xs.empty())
      return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
  };
  std::vector<MedianEntry> out;
  for (const auto &key : order) {
    auto &bucket = buckets[key];
    out.push_back(
        {key.first, key.second, median(bucket.first), median(bucket.second)});
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string format_dims(const std::vector<i64> &dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i)
      out += "x";
    out += std::to_string(dims[i]);
  }
  return out;
}

} // namespace

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
  os << "algorithm,stencil,d,N,n,p,dims,j_sum,j_max,j_sum_blocked,"
        "j_max_blocked,reduction_sum,reduction_max,flags\n";
  auto opt_i = [](const std::optional<i64> &v) {
    return v ? std::to_string(*v) : std::string();
  };
  auto opt_d = [](const std::optional<double> &v) {
    return v ? format_double(*v) : std::string();
  };
  for (const SweepRow &row : rows) {
    os << row.algorithm << ',' << row.stencil << ',' << row.d << ','
       << row.node_count << ',' << row.procs_per_node << ',' << row.p << ','
       << format_dims(row.dims) << ',' << opt_i(row.j_sum) << ','
       << opt_i(row.j_max) << ',' << opt_i(row.j_sum_blocked) << ','
       << opt_i(row.j_max_blocked) << ',' << opt_d(row.reduction_sum) << ','
       << opt_d(row.reduction_max) << ',' << row.flags << '\n';
  }
  for (const MedianEntry &entry : sweep_medians(rows))
    os << "# median algorithm=" << entry.algorithm
       << " stencil=" << entry.stencil
       << " reduction_sum=" << format_double(entry.reduction_sum)
       << " reduction_max=" << format_double(entry.reduction_max) << '\n';
}

} // namespace cartmap
