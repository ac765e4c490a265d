#include "cartmap/mappers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cartmap {

namespace {

i64 product(const std::vector<i64> &dims) {
  return std::accumulate(dims.begin(), dims.end(), i64{1}, std::multiplies<>());
}

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) via rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t v = next();
      if (v >= threshold)
        return v % bound;
    }
  }
};

void check_pair(const Grid &g, const Stencil &s) {
  if (g.ndims() != s.ndims())
    throw validation_error("stencil dimensionality (" +
                           std::to_string(s.ndims()) +
                           ") does not match the grid (" +
                           std::to_string(g.ndims()) + ")");
}

void check_rank(const Grid &g, i64 rank) {
  if (rank < 0 || rank >= g.size())
    throw validation_error("rank " + std::to_string(rank) + " out of range");
}

// Dimension order for cutting: ascending preference (most orthogonal
// first), ties to the larger dimension, then the lower index.
std::vector<int> cut_order(const std::vector<i64> &dims,
                           const std::vector<double> &pref) {
  std::vector<int> order(dims.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pref[a] != pref[b])
      return pref[a] < pref[b];
    if (dims[a] != dims[b])
      return dims[a] > dims[b];
    return a < b;
  });
  return order;
}

std::tuple<int, i64, i64> find_split_ordered(const std::vector<i64> &dims,
                                             const std::vector<double> &pref,
                                             i64 n) {
  const i64 total = product(dims);
  for (int i : cut_order(dims, pref)) {
    const i64 di = dims[i];
    const i64 rest = total / di;
    auto valid = [&](i64 c) {
      return c >= 1 && c <= di - 1 && (c * rest) % n == 0;
    };
    const i64 center = di / 2;
    if (valid(center))
      return {i, center, di - center};
    for (i64 delta = 1; delta < di; ++delta) {
      if (valid(center - delta))
        return {i, center - delta, di - (center - delta)};
      if (valid(center + delta))
        return {i, center + delta, di - (center + delta)};
    }
  }
  // Unreachable when total is a multiple of n with quotient >= 2: some
  // dimension always shares a prime factor with the quotient.
  throw std::logic_error("find_split: no node-divisible cut exists");
}

// Base-case cell order: the dimension with the most communication varies
// fastest, ties to the smaller dimension, then the lower index.
std::vector<int> base_case_order(const std::vector<i64> &dims,
                                 const std::vector<double> &pref) {
  std::vector<int> order(dims.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pref[a] != pref[b])
      return pref[a] > pref[b];
    if (dims[a] != dims[b])
      return dims[a] < dims[b];
    return a < b;
  });
  return order;
}

} // namespace

RankMapping blocked_map(const Grid &g) {
  RankMapping m;
  m.algorithm = "blocked";
  const i64 p = g.size();
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r)
    m.new_coord.push_back(rank_to_coord(g, r));
  return m;
}

RankMapping random_map(const Grid &g, std::uint64_t seed) {
  const i64 p = g.size();
  std::vector<i64> perm(p);
  std::iota(perm.begin(), perm.end(), i64{0});
  SplitMix64 rng(seed);
  for (i64 i = p - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  RankMapping m;
  m.algorithm = "random";
  m.seed = seed;
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r)
    m.new_coord.push_back(rank_to_coord(g, perm[r]));
  return m;
}

std::tuple<int, i64, i64> find_split(const std::vector<i64> &dims,
                                     const Stencil &s, i64 n) {
  if (dims.empty())
    throw validation_error("empty dimension list");
  if (static_cast<int>(dims.size()) != s.ndims())
    throw validation_error("stencil dimensionality does not match dims");
  if (n < 1)
    throw validation_error("node size must be positive");
  const i64 total = product(dims);
  if (total % n != 0 || total / n < 2)
    throw validation_error("find_split requires the grid to hold at least "
                           "two node multiples");
  return find_split_ordered(dims, cosine_preference(s), n);
}

Coord hyperplane_coord(const Grid &g, const Stencil &s, i64 n, i64 rank,
                       SplitTrace *trace) {
  check_pair(g, s);
  check_rank(g, rank);
  if (n < 1)
    throw validation_error("node size must be positive");
  const i64 p = g.size();
  if (p % n != 0)
    throw validation_error("hyperplane requires p to be a multiple of the "
                           "node size; aggregate heterogeneous sizes first");

  const std::vector<double> pref = cosine_preference(s);
  std::vector<i64> dims = g.dims;
  Coord origin(g.ndims(), 0);
  i64 r = rank;

  while (product(dims) > 2 * n) {
    auto [i, dl, dr] = find_split_ordered(dims, pref, n);
    const i64 rest = product(dims) / dims[i];
    const i64 left = dl * rest;
    const bool go_left = r < left;
    if (trace)
      trace->splits.push_back({i, left, dr * rest, go_left});
    if (go_left) {
      dims[i] = dl;
    } else {
      r -= left;
      origin[i] += dl;
      dims[i] = dr;
    }
  }

  // Direct layout of the final block of at most 2n cells.
  Coord out = std::move(origin);
  for (int idx : base_case_order(dims, pref)) {
    out[idx] += r % dims[idx];
    r /= dims[idx];
  }
  return out;
}

RankMapping hyperplane_map(const Grid &g, const Stencil &s, i64 n) {
  RankMapping m;
  m.algorithm = "hyperplane";
  const i64 p = g.size();
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r)
    m.new_coord.push_back(hyperplane_coord(g, s, n, r));
  return m;
}

namespace {

// Split dimension: never-communicating dimensions (f == 0) outrank all
// others, larger first; otherwise the largest d_i/f_i wins. Ties go to the
// lower index. Only dimensions of size >= 2 are candidates.
int kd_split_dim(const std::vector<i64> &dims, const std::vector<i64> &f) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (dims[i] < 2)
      continue;
    if (best == -1) {
      best = i;
      continue;
    }
    const bool i_free = f[i] == 0, b_free = f[best] == 0;
    if (i_free != b_free) {
      if (i_free)
        best = i;
      continue;
    }
    if (i_free) {
      if (dims[i] > dims[best])
        best = i;
    } else if (dims[i] * f[best] > dims[best] * f[i]) {
      best = i;
    }
  }
  return best;
}

} // namespace

Coord kdtree_coord(const Grid &g, const Stencil &s, i64 rank,
                   SplitTrace *trace) {
  check_pair(g, s);
  check_rank(g, rank);

  const std::vector<i64> f = comm_weights(s);
  std::vector<i64> dims = g.dims;
  Coord origin(g.ndims(), 0);
  i64 r = rank;

  while (product(dims) > 1) {
    const int k = kd_split_dim(dims, f);
    const i64 rest = product(dims) / dims[k];
    const i64 dl = dims[k] / 2;
    const i64 left = dl * rest;
    const bool go_left = r < left;
    if (trace)
      trace->splits.push_back({k, left, (dims[k] - dl) * rest, go_left});
    if (go_left) {
      dims[k] = dl;
    } else {
      r -= left;
      origin[k] += dl;
      dims[k] -= dl;
    }
  }
  return origin;
}

RankMapping kdtree_map(const Grid &g, const Stencil &s) {
  RankMapping m;
  m.algorithm = "kdtree";
  const i64 p = g.size();
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r)
    m.new_coord.push_back(kdtree_coord(g, s, r));
  return m;
}

std::vector<double> distortion_factors(const Stencil &s) {
  const std::vector<i64> ext = extensions(s);
  i64 volume = 1;
  int nonzero = 0;
  for (i64 e : ext)
    if (e != 0) {
      volume *= e;
      ++nonzero;
    }
  // Stencils are non-empty and have no zero offsets, so nonzero >= 1.
  const double root = std::pow(static_cast<double>(volume), 1.0 / nonzero);
  std::vector<double> alpha(ext.size());
  for (std::size_t i = 0; i < ext.size(); ++i)
    alpha[i] = static_cast<double>(ext[i]) / root;
  return alpha;
}

StripLayout strips_layout(const Grid &g, const Stencil &s, i64 n) {
  check_pair(g, s);
  if (n < 1)
    throw validation_error("node size must be positive");
  const int d = g.ndims();
  const std::vector<double> alpha = distortion_factors(s);

  StripLayout layout;
  layout.along = 0;
  for (int j = 1; j < d; ++j)
    if (g.dims[j] > g.dims[layout.along])
      layout.along = j;

  double fixed = 1.0;
  int m = 0;
  for (int j = 0; j < d; ++j) {
    if (j == layout.along)
      continue;
    const double ideal =
        std::pow(alpha[j] * static_cast<double>(n) / fixed, 1.0 / (d - m));
    i64 w = static_cast<i64>(std::floor(ideal + 0.5)); // round half up
    w = std::clamp<i64>(w, 1, g.dims[j]);
    layout.tiled_dims.push_back(j);
    layout.base_width.push_back(w);
    layout.strip_counts.push_back(g.dims[j] / w);
    fixed *= static_cast<double>(w);
    ++m;
  }
  return layout;
}

Coord strips_coord(const Grid &g, const Stencil &s, i64 n, i64 rank) {
  check_rank(g, rank);
  const StripLayout layout = strips_layout(g, s, n);
  const int d = g.ndims();
  const i64 len = g.dims[layout.along];
  const std::size_t nt = layout.tiled_dims.size();

  // Actual width of strip `which` along tiled dimension t: the last strip
  // absorbs the division remainder.
  auto strip_width = [&](std::size_t t, i64 which) {
    const int j = layout.tiled_dims[t];
    i64 w = layout.base_width[t];
    if (which == layout.strip_counts[t] - 1)
      w += g.dims[j] % layout.base_width[t];
    return w;
  };

  // Locate the rank's strip: strips are filled in row-major order of their
  // strip coordinates (last tiled dimension fastest).
  std::vector<i64> scoord(nt, 0);
  i64 r = rank;
  for (;;) {
    i64 volume = len;
    for (std::size_t t = 0; t < nt; ++t)
      volume *= strip_width(t, scoord[t]);
    if (r < volume)
      break;
    r -= volume;
    for (std::size_t t = nt; t-- > 0;) {
      if (++scoord[t] < layout.strip_counts[t])
        break;
      scoord[t] = 0;
    }
  }

  i64 slice = 1; // cells per cross-section of the strip
  for (std::size_t t = 0; t < nt; ++t)
    slice *= strip_width(t, scoord[t]);
  const i64 slice_pos = r / slice;
  const i64 in_slice = r % slice;

  // Serpentine: the march direction along the strip flips with the parity
  // of the strip coordinate digits, the within-slice order with the slice
  // parity, keeping consecutive ranks adjacent across boundaries.
  i64 digit_sum = 0;
  for (i64 c : scoord)
    digit_sum += c;
  const i64 along_pos = digit_sum % 2 == 0 ? slice_pos : len - 1 - slice_pos;
  i64 cell = slice_pos % 2 == 0 ? in_slice : slice - 1 - in_slice;

  Coord out(d, 0);
  out[layout.along] = along_pos;
  for (std::size_t t = nt; t-- > 0;) {
    const i64 w = strip_width(t, scoord[t]);
    const int j = layout.tiled_dims[t];
    out[j] = scoord[t] * layout.base_width[t] + cell % w;
    cell /= w;
  }
  return out;
}

RankMapping strips_map(const Grid &g, const Stencil &s, i64 n) {
  RankMapping m;
  m.algorithm = "strips";
  const i64 p = g.size();
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r)
    m.new_coord.push_back(strips_coord(g, s, n, r));
  return m;
}

RankMapping nodecart_map(const Grid &g, i64 n) {
  if (n < 1)
    throw validation_error("node size must be positive");
  const int d = g.ndims();

  std::vector<i64> inner(d, 1);
  std::vector<i64> extent = g.dims;
  std::vector<i64> primes = prime_factors(n);
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const i64 f = *it;
    int best = -1;
    for (int i = 0; i < d; ++i)
      if (extent[i] % f == 0 && (best == -1 || extent[i] > extent[best]))
        best = i;
    if (best == -1)
      throw infeasible_error("nodecart: prime factor " + std::to_string(f) +
                             " of the node size divides no dimension extent");
    inner[best] *= f;
    extent[best] /= f;
  }

  const Grid outer_grid(extent);
  const Grid inner_grid(inner);
  const i64 p = g.size();
  RankMapping m;
  m.algorithm = "nodecart";
  m.new_coord.reserve(p);
  for (i64 r = 0; r < p; ++r) {
    const Coord oc = rank_to_coord(outer_grid, r / n);
    const Coord ic = rank_to_coord(inner_grid, r % n);
    Coord c(d);
    for (int i = 0; i < d; ++i)
      c[i] = oc[i] * inner[i] + ic[i];
    m.new_coord.push_back(std::move(c));
  }
  return m;
}

std::vector<AlgoRun> run_all(const Grid &g, const Stencil &s,
                             const NodeConfig &nodes, std::uint64_t seed) {
  check_pair(g, s);
  if (nodes.total() != g.size())
    throw validation_error("node sizes must sum to the grid size");
  const i64 n = nodes.aggregate();

  std::vector<AlgoRun> out;
  out.push_back({"blocked", blocked_map(g), ""});
  out.push_back({"random", random_map(g, seed), ""});
  if (g.size() % n == 0)
    out.push_back({"hyperplane", hyperplane_map(g, s, n), ""});
  else
    out.push_back({"hyperplane", std::nullopt, "skipped_p_not_multiple_of_n"});
  out.push_back({"kdtree", kdtree_map(g, s), ""});
  out.push_back({"strips", strips_map(g, s, n), ""});
  try {
    out.push_back({"nodecart", nodecart_map(g, n), ""});
  } catch (const infeasible_error &) {
    RankMapping fallback = blocked_map(g);
    fallback.algorithm = "nodecart";
    out.push_back({"nodecart", std::move(fallback), "infeasible_fallback_blocked"});
  }

  for (const AlgoRun &run : out)
    if (run.mapping && !is_bijection(g, *run.mapping))
      throw std::logic_error("algorithm '" + run.algorithm +
                             "' produced a non-bijective mapping");
  return out;
}

} // namespace cartmap
