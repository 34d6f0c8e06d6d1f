#include "indep/rng.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace indep;

TEST_SUITE("rng") {
  TEST_CASE("same seed, same stream") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
  }

  TEST_CASE("split streams ignore parent consumption") {
    Rng a(9), b(9);
    for (int i = 0; i < 17; ++i) (void)b();
    auto ca = a.split(3), cb = b.split(3);
    for (int i = 0; i < 20; ++i) CHECK(ca() == cb());
    CHECK(a.split(3)() != a.split(4)());
  }

  TEST_CASE("derive_seed spreads") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(42, s));
    CHECK(seen.size() == 1000);
  }

  TEST_CASE("below is in range and roughly uniform") {
    Rng r(1);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
      const auto x = r.below(7);
      REQUIRE(x < 7);
      ++hist[x];
    }
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
    const double u = r.uniform01();
    CHECK((u >= 0.0 && u < 1.0));
  }
}
