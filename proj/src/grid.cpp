#include "cartmap/grid.hpp"

#include <algorithm>
#include <limits>

namespace cartmap {

Grid::Grid(std::vector<i64> dims_in, std::vector<bool> periods_in)
    : dims(std::move(dims_in)), periods(std::move(periods_in)) {
  if (dims.empty())
    throw validation_error("grid needs at least one dimension");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 1)
      throw validation_error("grid dimension " + std::to_string(i) +
                             " must be positive, got " + std::to_string(dims[i]));
  if (periods.empty())
    periods.assign(dims.size(), false);
  if (periods.size() != dims.size())
    throw validation_error("periods list must match the number of dimensions");

  unsigned __int128 p = 1;
  for (i64 d : dims) {
    p *= static_cast<unsigned __int128>(d);
    if (p > std::numeric_limits<std::uint64_t>::max())
      throw validation_error("grid size does not fit in 64 bits");
  }
}

i64 Grid::size() const {
  i64 p = 1;
  for (i64 d : dims)
    p *= d;
  return p;
}

Coord rank_to_coord(const Grid &g, i64 rank) {
  if (rank < 0 || rank >= g.size())
    throw validation_error("rank " + std::to_string(rank) + " out of range [0, " +
                           std::to_string(g.size()) + ")");
  Coord c(g.dims.size());
  for (int i = g.ndims() - 1; i >= 0; --i) {
    c[i] = rank % g.dims[i];
    rank /= g.dims[i];
  }
  return c;
}

i64 coord_to_rank(const Grid &g, const Coord &c) {
  if (static_cast<int>(c.size()) != g.ndims())
    throw validation_error("coordinate has wrong dimensionality");
  i64 r = 0;
  for (int i = 0; i < g.ndims(); ++i) {
    if (c[i] < 0 || c[i] >= g.dims[i])
      throw validation_error("coordinate component " + std::to_string(i) +
                             " out of range");
    r = r * g.dims[i] + c[i];
  }
  return r;
}

namespace {

// Divisors of x not exceeding cap, descending.
std::vector<i64> divisors_descending(i64 x, i64 cap) {
  std::vector<i64> lo, hi;
  for (i64 q = 1; q * q <= x; ++q) {
    if (x % q != 0)
      continue;
    if (q <= cap)
      lo.push_back(q);
    if (x / q <= cap)
      hi.push_back(x / q);
  }
  std::vector<i64> out;
  out.reserve(lo.size() + hi.size());
  for (i64 v : hi)
    out.push_back(v);
  for (auto it = lo.rbegin(); it != lo.rend(); ++it)
    if (out.empty() || out.back() != *it)
      out.push_back(*it);
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void search_factorizations(i64 remaining, int slots, i64 max_factor,
                           std::vector<i64> &cur, std::vector<i64> &best,
                           i64 &best_spread) {
  if (slots == 1) {
    if (remaining > max_factor)
      return;
    cur.push_back(remaining);
    i64 spread = cur.front() - cur.back(); // non-increasing by construction
    if (best.empty() || spread < best_spread ||
        (spread == best_spread && cur < best)) {
      best = cur;
      best_spread = spread;
    }
    cur.pop_back();
    return;
  }
  for (i64 f : divisors_descending(remaining, max_factor)) {
    // f is the largest remaining factor; it must be able to cover the rest
    unsigned __int128 bound = 1;
    for (int j = 0; j < slots; ++j)
      bound *= static_cast<unsigned __int128>(f);
    if (bound < static_cast<unsigned __int128>(remaining))
      break;
    cur.push_back(f);
    search_factorizations(remaining / f, slots - 1, f, cur, best, best_spread);
    cur.pop_back();
  }
}

} // namespace

std::vector<i64> dims_create(i64 p, int d) {
  if (p < 1)
    throw validation_error("process count must be positive");
  if (d < 1)
    throw validation_error("dimension count must be positive");
  std::vector<i64> best, cur;
  i64 best_spread = 0;
  search_factorizations(p, d, p, cur, best, best_spread);
  return best;
}

std::vector<i64> prime_factors(i64 x) {
  if (x < 1)
    throw validation_error("prime_factors requires a positive integer");
  std::vector<i64> out;
  for (i64 q = 2; q * q <= x; ++q)
    while (x % q == 0) {
      out.push_back(q);
      x /= q;
    }
  if (x > 1)
    out.push_back(x);
  return out;
}

} // namespace cartmap
