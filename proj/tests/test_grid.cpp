#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "cartmap/grid.hpp"

using namespace cartmap;

TEST_CASE("rank_to_coord decomposes row-major, last dimension fastest") {
  Grid g({5, 4});
  CHECK(rank_to_coord(g, 0) == Coord{0, 0});
  CHECK(rank_to_coord(g, 7) == Coord{1, 3});
  Grid g3({3, 2, 2});
  CHECK(rank_to_coord(g3, 11) == Coord{2, 1, 1});
  CHECK_THROWS_AS(rank_to_coord(g, -1), validation_error);
  CHECK_THROWS_AS(rank_to_coord(g, 20), validation_error);
}

TEST_CASE("coord_to_rank inverts rank_to_coord") {
  Grid g({5, 4});
  CHECK(coord_to_rank(g, {0, 0}) == 0);
  CHECK(coord_to_rank(g, {1, 3}) == 7);
  CHECK(coord_to_rank(Grid({2, 2}), {1, 1}) == 3);
  CHECK_THROWS_AS(coord_to_rank(g, {5, 0}), validation_error);
  CHECK_THROWS_AS(coord_to_rank(g, {0, -1}), validation_error);
  CHECK_THROWS_AS(coord_to_rank(g, {0}), validation_error);
}

TEST_CASE("round trip over assorted grids") {
  for (const Grid &g :
       {Grid({10, 10, 10}), Grid({7, 11, 13}), Grid({97}), Grid({2, 3, 5, 7}),
        Grid({1, 50}), Grid({6, 1, 6})}) {
    for (i64 r = 0; r < g.size(); ++r)
      CHECK(coord_to_rank(g, rank_to_coord(g, r)) == r);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({}), validation_error);
  CHECK_THROWS_AS(Grid({0, 4}), validation_error);
  CHECK_THROWS_AS(Grid({-2}), validation_error);
  CHECK_THROWS_AS(Grid({2, 2}, {true}), validation_error);
  CHECK_NOTHROW(Grid({2, 2}, {true, false}));
}

TEST_CASE("dims_create reproduces the reference factorizations") {
  CHECK(dims_create(2400, 2) == std::vector<i64>{50, 48});
  CHECK(dims_create(4800, 2) == std::vector<i64>{75, 64});
  CHECK(dims_create(12, 3) == std::vector<i64>{3, 2, 2});
  CHECK(dims_create(7, 1) == std::vector<i64>{7});
  CHECK(dims_create(1, 3) == std::vector<i64>{1, 1, 1});
  CHECK(dims_create(6, 2) == std::vector<i64>{3, 2});
}

TEST_CASE("dims_create multiplies back, is sorted and spread-minimal") {
  for (i64 p = 1; p <= 240; ++p) {
    for (int d = 1; d <= 4; ++d) {
      const auto dims = dims_create(p, d);
      REQUIRE(static_cast<int>(dims.size()) == d);
      CHECK(std::accumulate(dims.begin(), dims.end(), i64{1},
                            std::multiplies<>()) == p);
      CHECK(std::is_sorted(dims.rbegin(), dims.rend()));
      CHECK(dims_create(p, d) == dims); // deterministic
    }
    // independent spread check against a plain divisor scan for d = 2
    i64 best_spread = p - 1;
    for (i64 a = 1; a * a <= p; ++a)
      if (p % a == 0)
        best_spread = std::min(best_spread, p / a - a);
    const auto pair = dims_create(p, 2);
    CHECK(pair[0] - pair[1] == best_spread);
  }
}

TEST_CASE("prime_factors basics and product property") {
  CHECK(prime_factors(1).empty());
  CHECK(prime_factors(48) == std::vector<i64>{2, 2, 2, 2, 3});
  CHECK(prime_factors(50) == std::vector<i64>{2, 5, 5});
  CHECK(prime_factors(97) == std::vector<i64>{97});
  CHECK(std::is_sorted(prime_factors(360).begin(), prime_factors(360).end()));
  bool all_good = true;
  for (i64 x = 1; x <= 1000000; ++x) {
    i64 prod = 1;
    for (i64 f : prime_factors(x))
      prod *= f;
    if (prod != x) {
      all_good = false;
      break;
    }
  }
  CHECK(all_good);
}
