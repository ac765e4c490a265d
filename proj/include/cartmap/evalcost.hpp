#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cartmap/mapping.hpp"
#include "cartmap/stencil.hpp"

namespace cartmap {

// Node hosting the given original rank under the scheduler's allocation
// (consecutive rank blocks per node).
i64 owner_of(const NodeConfig &nodes, i64 rank);

// Visit every directed communication edge the stencil induces on the grid:
// one edge per (vertex, offset) pair whose target lies in the grid after
// periodic wrapping. Targets out of range along a non-periodic dimension
// are dropped. fn(source_vertex, target_vertex) receives row-major indices.
template <class Fn>
void for_each_induced_edge(const Grid &g, const Stencil &s, Fn &&fn) {
  const int d = g.ndims();
  if (s.ndims() != d)
    throw validation_error("stencil dimensionality does not match the grid");
  const i64 p = g.size();
  Coord u(d, 0), v(d);
  for (i64 ur = 0; ur < p; ++ur) {
    for (const Coord &off : s.offsets) {
      bool in_range = true;
      for (int i = 0; i < d; ++i) {
        i64 t = u[i] + off[i];
        if (g.periods[i]) {
          t %= g.dims[i];
          if (t < 0)
            t += g.dims[i];
        } else if (t < 0 || t >= g.dims[i]) {
          in_range = false;
          break;
        }
        v[i] = t;
      }
      if (in_range) {
        i64 vr = 0;
        for (int i = 0; i < d; ++i)
          vr = vr * g.dims[i] + v[i];
        fn(ur, vr);
      }
    }
    for (int i = d - 1; i >= 0; --i) {
      if (++u[i] < g.dims[i])
        break;
      u[i] = 0;
    }
  }
}

std::vector<std::pair<i64, i64>> induced_edges(const Grid &g, const Stencil &s);

// Cut-cost summary of a mapping: j_sum counts every directed inter-node
// edge, per_node[i] the cut edges whose source node i owns.
struct CostReport {
  i64 j_sum = 0;
  i64 j_max = 0;
  std::vector<i64> per_node;
  i64 bottleneck_node = 0;
  std::string fingerprint;
};

CostReport evaluate(const Grid &g, const Stencil &s, const RankMapping &m,
                    const NodeConfig &nodes);

// Cost ratios against a baseline from the same instance. A 0/0 ratio is
// defined as 1, and x/0 with x > 0 as +infinity.
struct Reduction {
  double sum_ratio = 1.0;
  double max_ratio = 1.0;
};

Reduction reduction(const CostReport &x, const CostReport &baseline);

// Stable identity of (grid, stencil, node sizes) used to reject comparing
// reports across different instances.
std::string instance_fingerprint(const Grid &g, const Stencil &s,
                                 const NodeConfig &nodes);

} // namespace cartmap
