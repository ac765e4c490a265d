#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cartmap/stencil.hpp"

using namespace cartmap;

namespace {

std::set<Coord> as_set(const Stencil &s) {
  return {s.offsets.begin(), s.offsets.end()};
}

// deterministic hand-rolled generator for property checks
struct Lcg {
  std::uint64_t s = 0x2545f4914f6cdd1dull;
  i64 next(i64 lo, i64 hi) { // inclusive
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return lo + static_cast<i64>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

Stencil random_stencil(Lcg &rng) {
  const int d = static_cast<int>(rng.next(1, 4));
  const int k = static_cast<int>(rng.next(1, 10));
  std::set<Coord> offs;
  while (static_cast<int>(offs.size()) < k) {
    Coord c(d);
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      c[i] = rng.next(-3, 3);
      zero = zero && c[i] == 0;
    }
    if (!zero)
      offs.insert(c);
  }
  return Stencil({offs.begin(), offs.end()});
}

} // namespace

TEST_CASE("builtin stencils match their definitions") {
  CHECK(as_set(builtin_stencil("nearest-neighbor", 2)) ==
        std::set<Coord>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  CHECK(as_set(builtin_stencil("component", 2)) ==
        std::set<Coord>{{1, 0}, {-1, 0}});
  CHECK(as_set(builtin_stencil("component", 3)) ==
        std::set<Coord>{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}});
  std::set<Coord> hops = as_set(builtin_stencil("nn", 2));
  hops.insert({2, 0});
  hops.insert({-2, 0});
  hops.insert({3, 0});
  hops.insert({-3, 0});
  CHECK(as_set(builtin_stencil("nn-hops", 2)) == hops);
  CHECK(builtin_stencil("nn", 1).neighbor_count() == 2);
  CHECK_THROWS_AS(builtin_stencil("component", 1), validation_error);
  CHECK_THROWS_AS(builtin_stencil("diagonal", 2), validation_error);
}

TEST_CASE("parse_flat reshapes and validates") {
  CHECK(as_set(parse_flat(2, 2, {1, 0, -1, 0})) ==
        std::set<Coord>{{1, 0}, {-1, 0}});
  CHECK(as_set(parse_flat(2, 4, {1, 0, -1, 0, 0, 1, 0, -1})) ==
        as_set(builtin_stencil("nn", 2)));

  CHECK_THROWS_WITH_AS(parse_flat(2, 1, {0, 0}),
                       doctest::Contains("offset 0"), validation_error);
  CHECK_THROWS_WITH_AS(parse_flat(2, 2, {1, 0, 1, 0}),
                       doctest::Contains("offset 1"), validation_error);
  CHECK_THROWS_AS(parse_flat(2, 2, {1, 0, -1}), validation_error);
}

TEST_CASE("cosine_preference on the builtins is exact") {
  CHECK(cosine_preference(builtin_stencil("nn", 2)) ==
        std::vector<double>{2.0, 2.0});
  CHECK(cosine_preference(builtin_stencil("component", 2)) ==
        std::vector<double>{2.0, 0.0});
  CHECK(cosine_preference(builtin_stencil("nn-hops", 2)) ==
        std::vector<double>{6.0, 2.0});
}

TEST_CASE("cosine_preference entries sum to k") {
  Lcg rng;
  for (int trial = 0; trial < 60; ++trial) {
    const Stencil s = random_stencil(rng);
    double sum = 0.0;
    for (double v : cosine_preference(s))
      sum += v;
    CHECK(std::abs(sum - static_cast<double>(s.neighbor_count())) < 1e-12);
  }
}

TEST_CASE("comm_weights counts crossing offsets") {
  CHECK(comm_weights(builtin_stencil("nn", 2)) == std::vector<i64>{2, 2});
  CHECK(comm_weights(builtin_stencil("nn-hops", 2)) == std::vector<i64>{6, 2});
  CHECK(comm_weights(builtin_stencil("component", 3)) ==
        std::vector<i64>{2, 2, 0});
}

TEST_CASE("extensions span min to max per dimension") {
  CHECK(extensions(builtin_stencil("nn", 2)) == std::vector<i64>{2, 2});
  CHECK(extensions(builtin_stencil("nn-hops", 2)) == std::vector<i64>{6, 2});
  CHECK(extensions(builtin_stencil("component", 2)) == std::vector<i64>{2, 0});
  // one-sided stencil: the spread is taken over the actual components
  CHECK(extensions(Stencil({{1, 0}, {2, 0}})) == std::vector<i64>{1, 2});
}

TEST_CASE("negating all offsets leaves the statistics unchanged") {
  Lcg rng;
  for (int trial = 0; trial < 40; ++trial) {
    const Stencil s = random_stencil(rng);
    std::vector<Coord> negated = s.offsets;
    for (Coord &c : negated)
      for (i64 &x : c)
        x = -x;
    const Stencil ns(std::move(negated));
    CHECK(comm_weights(ns) == comm_weights(s));
    CHECK(extensions(ns) == extensions(s));
  }
}

TEST_CASE("parse_flat inverts flatten") {
  Lcg rng;
  for (int trial = 0; trial < 40; ++trial) {
    const Stencil s = random_stencil(rng);
    const Stencil back =
        parse_flat(s.ndims(), s.neighbor_count(), flatten(s));
    CHECK(back.offsets == s.offsets);
  }
}

TEST_CASE("dim_stats bundles the three statistics") {
  const Stencil s = builtin_stencil("nn-hops", 2);
  const DimStats stats = dim_stats(s);
  CHECK(stats.cosine_pref == cosine_preference(s));
  CHECK(stats.comm_weight == comm_weights(s));
  CHECK(stats.extension == extensions(s));
}
