#pragma once

#include <array>
#include <string_view>
#include <tuple>

#include "cartmap/mapping.hpp"
#include "cartmap/stencil.hpp"

namespace cartmap {

// Canonical algorithm order used by the batch driver, the sweep and the CLI.
inline constexpr std::array<std::string_view, 6> kAlgorithms = {
    "blocked", "random", "hyperplane", "kdtree", "strips", "nodecart"};

// Identity reordering: rank r stays at grid position r.
RankMapping blocked_map(const Grid &g);

// Fisher-Yates shuffle driven by a seeded splitmix64 stream; the same seed
// always yields the same permutation.
RankMapping random_map(const Grid &g, std::uint64_t seed);

// --- Hyperplane: recursive bisection into node-size-divisible parts -------
//
// Splits the grid along the dimension most orthogonal to the stencil
// (smallest summed squared direction cosines, ties to the larger dimension)
// at a cut position as close to the center as possible such that both parts
// hold a multiple of n processes. Grids of at most 2n cells are laid out
// directly with the heaviest-communication dimension varying fastest.

// Returns (dimension index, d', d'') for the current sub-grid. The product
// of dims must be C*n with C >= 2; a valid split always exists then.
std::tuple<int, i64, i64> find_split(const std::vector<i64> &dims,
                                     const Stencil &s, i64 n);

Coord hyperplane_coord(const Grid &g, const Stencil &s, i64 n, i64 rank,
                       SplitTrace *trace = nullptr);
RankMapping hyperplane_map(const Grid &g, const Stencil &s, i64 n);

// --- k-d tree: node-size-oblivious recursive halving ----------------------
//
// Splits the dimension maximizing d_i/f_i (never-communicating dimensions
// first, larger ones preferred) into floor/ceil halves until a single cell
// remains; the left half owns the lower local ranks.

Coord kdtree_coord(const Grid &g, const Stencil &s, i64 rank,
                   SplitTrace *trace = nullptr);
RankMapping kdtree_map(const Grid &g, const Stencil &s);

// --- Stencil Strips: tile the grid into serpentine-filled strips ----------

// Extension of each stencil dimension normalized by the d_b-th root of the
// bounding-box volume; stretches the ideal node shape per dimension.
std::vector<double> distortion_factors(const Stencil &s);

// How the grid is tiled: strips run along dimension `along`; every other
// dimension is cut into `strip_counts[t]` strips of `base_width[t]` cells,
// the last strip absorbing the division remainder.
struct StripLayout {
  int along;
  std::vector<int> tiled_dims;
  std::vector<i64> base_width;
  std::vector<i64> strip_counts;
};

StripLayout strips_layout(const Grid &g, const Stencil &s, i64 n);

Coord strips_coord(const Grid &g, const Stencil &s, i64 n, i64 rank);
RankMapping strips_map(const Grid &g, const Stencil &s, i64 n);

// --- Nodecart-style baseline ----------------------------------------------
//
// Factors the grid into an inter-node grid times an intra-node grid by
// greedily assigning the prime factors of n (largest first) to the
// dimension with the largest remaining extent that the factor divides.
// Throws infeasible_error when some factor divides no extent.
RankMapping nodecart_map(const Grid &g, i64 n);

// Batch driver running all six algorithms. Nodecart infeasibility is
// replaced by a flagged blocked fallback; hyperplane is skipped with a flag
// when p is not a multiple of the aggregate node size. Every produced
// mapping is verified to be a bijection.
struct AlgoRun {
  std::string algorithm;
  std::optional<RankMapping> mapping;
  std::string flag;
};

std::vector<AlgoRun> run_all(const Grid &g, const Stencil &s,
                             const NodeConfig &nodes, std::uint64_t seed);

} // namespace cartmap
