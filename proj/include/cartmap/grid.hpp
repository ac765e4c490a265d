#pragma once

#include <cstdint>
#include <vector>

#include "cartmap/errors.hpp"

namespace cartmap {

using i64 = std::int64_t;

// A position in the grid, one component per dimension.
using Coord = std::vector<i64>;

// d-dimensional Cartesian process grid. Ranks are laid out row-major with
// the last dimension varying fastest (C/MPI convention).
struct Grid {
  std::vector<i64> dims;
  std::vector<bool> periods; // wraparound flag per dimension

  explicit Grid(std::vector<i64> dims, std::vector<bool> periods = {});

  int ndims() const { return static_cast<int>(dims.size()); }

  // Total number of processes p.
  i64 size() const;
};

Coord rank_to_coord(const Grid &g, i64 rank);
i64 coord_to_rank(const Grid &g, const Coord &c);

// Balanced factorization of p into d factors, MPI_Dims_create style:
// product equals p, sorted non-increasing, minimal (max - min) spread,
// lexicographically smallest vector on ties.
std::vector<i64> dims_create(i64 p, int d);

// Multiset of prime factors in ascending order; prime_factors(1) is empty.
std::vector<i64> prime_factors(i64 x);

} // namespace cartmap
