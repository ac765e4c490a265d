#include "cartmap/stencil.hpp"

#include <algorithm>
#include <set>

namespace cartmap {

Stencil::Stencil(std::vector<Coord> offsets_in) : offsets(std::move(offsets_in)) {
  if (offsets.empty())
    throw validation_error("stencil needs at least one offset");
  const std::size_t d = offsets[0].size();
  if (d == 0)
    throw validation_error("stencil offsets need at least one dimension");
  std::set<Coord> seen;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const Coord &off = offsets[i];
    if (off.size() != d)
      throw validation_error("offset " + std::to_string(i) +
                             " has mismatched dimensionality");
    if (std::all_of(off.begin(), off.end(), [](i64 x) { return x == 0; }))
      throw validation_error("offset " + std::to_string(i) +
                             " is the zero vector (self-loop)");
    if (!seen.insert(off).second)
      throw validation_error("offset " + std::to_string(i) + " is a duplicate");
  }
}

Stencil builtin_stencil(std::string_view name, int ndims) {
  if (ndims < 1)
    throw validation_error("stencil dimensionality must be positive");
  auto axis = [&](int i, i64 a) {
    Coord c(ndims, 0);
    c[i] = a;
    return c;
  };
  std::vector<Coord> offs;
  if (name == "nn" || name == "nearest-neighbor") {
    for (int i = 0; i < ndims; ++i) {
      offs.push_back(axis(i, 1));
      offs.push_back(axis(i, -1));
    }
  } else if (name == "component") {
    if (ndims < 2)
      throw validation_error("component stencil is empty for 1-d grids");
    for (int i = 0; i < ndims - 1; ++i) {
      offs.push_back(axis(i, 1));
      offs.push_back(axis(i, -1));
    }
  } else if (name == "nn-hops") {
    for (int i = 0; i < ndims; ++i) {
      offs.push_back(axis(i, 1));
      offs.push_back(axis(i, -1));
    }
    for (i64 a : {2, 3}) {
      offs.push_back(axis(0, a));
      offs.push_back(axis(0, -a));
    }
  } else {
    throw validation_error("unknown stencil '" + std::string(name) +
                           "' (expected nn, component or nn-hops)");
  }
  return Stencil(std::move(offs));
}

Stencil parse_flat(int ndims, i64 k, const std::vector<i64> &flat) {
  if (ndims < 1)
    throw validation_error("stencil dimensionality must be positive");
  if (k < 1)
    throw validation_error("neighbor count must be positive");
  if (static_cast<i64>(flat.size()) != k * ndims)
    throw validation_error("flattened stencil has " + std::to_string(flat.size()) +
                           " entries, expected k*ndims = " +
                           std::to_string(k * ndims));
  std::vector<Coord> offs(k);
  for (i64 i = 0; i < k; ++i)
    offs[i].assign(flat.begin() + i * ndims, flat.begin() + (i + 1) * ndims);
  return Stencil(std::move(offs));
}

std::vector<i64> flatten(const Stencil &s) {
  std::vector<i64> out;
  out.reserve(s.offsets.size() * s.ndims());
  for (const Coord &off : s.offsets)
    out.insert(out.end(), off.begin(), off.end());
  return out;
}

std::vector<double> cosine_preference(const Stencil &s) {
  const int d = s.ndims();
  std::vector<double> pref(d, 0.0);
  for (const Coord &off : s.offsets) {
    i64 norm2 = 0;
    for (i64 x : off)
      norm2 += x * x;
    for (int j = 0; j < d; ++j)
      pref[j] += static_cast<double>(off[j] * off[j]) / static_cast<double>(norm2);
  }
  return pref;
}

std::vector<i64> comm_weights(const Stencil &s) {
  const int d = s.ndims();
  std::vector<i64> f(d, 0);
  for (const Coord &off : s.offsets)
    for (int j = 0; j < d; ++j)
      if (off[j] != 0)
        ++f[j];
  return f;
}

std::vector<i64> extensions(const Stencil &s) {
  const int d = s.ndims();
  std::vector<i64> e(d, 0);
  for (int j = 0; j < d; ++j) {
    i64 lo = s.offsets[0][j], hi = lo;
    for (const Coord &off : s.offsets) {
      lo = std::min(lo, off[j]);
      hi = std::max(hi, off[j]);
    }
    e[j] = hi - lo;
  }
  return e;
}

DimStats dim_stats(const Stencil &s) {
  return {cosine_preference(s), comm_weights(s), extensions(s)};
}

} // namespace cartmap
