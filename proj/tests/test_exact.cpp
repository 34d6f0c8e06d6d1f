#include "indep/errors.hpp"
#include "indep/exact.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace indep;

TEST_SUITE("exact") {
  TEST_CASE("worked examples") {
    const auto f1 = CnfFormula::from_ints(3, {{-1, 2}, {-2, 3}});
    const auto f2 = CnfFormula::from_ints(4, {{1, 2}, {-2, 3}, {-3, 4}, {-1, 2}});
    CHECK(exact::brute_force_count(f1).value == 4);
    CHECK(exact::count_2sat_exact(f1).value == 4);
    CHECK(exact::count_exact(f1).value == 4);
    CHECK(exact::brute_force_count(f2).value == 2);
    CHECK(exact::count_exact(f2).value == 2);
    CHECK(exact::brute_force_count(CnfFormula(5, {})).value == 32);
    CHECK(exact::count_2sat_exact(CnfFormula::from_ints(1, {{1}, {-1}})).value == 0);
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(exact::brute_force_count(CnfFormula(29, {})), GuardError);
    CHECK_THROWS_AS(exact::brute_force_count(CnfFormula(10, {}), 8), GuardError);
    CHECK_THROWS_AS(exact::count_2sat_exact(CnfFormula::from_ints(3, {{1, 2, 3}})), std::invalid_argument);
  }

  TEST_CASE("large n beyond 64 bits") {
    const auto phi = CnfFormula::from_ints(100, {{1, 2}});
    CHECK(exact::count_exact(phi).value == BigInt(3) * pow2(98));
  }

  TEST_CASE("2-SAT counter equals the oracle on 500 formulas") {
    for (std::uint32_t seed = 0; seed < 500; ++seed) {
      const unsigned n = 6 + seed % 13;
      const auto ints = oracle::random_mixed(n, n + seed % 11, 2, seed);
      const auto phi = CnfFormula::from_ints(n, ints);
      REQUIRE(exact::count_2sat_exact(phi).value == oracle::count(ints, n));
    }
    const auto ints = oracle::random_kcnf(16, 24, 2, 77);
    CHECK(exact::count_2sat_exact(CnfFormula::from_ints(16, ints)).value == oracle::count(ints, 16));
  }

  TEST_CASE("k-CNF counter and brute force equal the oracle") {
    for (std::uint32_t seed = 0; seed < 200; ++seed) {
      const unsigned n = 5 + seed % 12;
      const auto ints = oracle::random_mixed(n, 2 * n, 4, seed);
      const auto phi = CnfFormula::from_ints(n, ints);
      const auto truth = oracle::count(ints, n);
      REQUIRE(exact::count_exact(phi).value == truth);
      REQUIRE(exact::brute_force_count(phi).value == truth);
      REQUIRE(exact::brute_force_count_serial(phi).value == truth);
    }
  }

  TEST_CASE("components") {
    CHECK(exact::connected_components(CnfFormula::from_ints(4, {{1, 2}, {3, 4}})).parts.size() == 2);
    CHECK(exact::connected_components(CnfFormula::from_ints(3, {{1, 2}, {2, 3}})).parts.size() == 1);
    const auto none = exact::connected_components(CnfFormula(5, {}));
    CHECK(none.parts.empty());
    CHECK(none.untouched_vars == 5);
  }

  TEST_CASE("multiplicativity over disjoint parts") {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
      auto a = oracle::random_kcnf(7, 10, 3, seed);
      auto b = oracle::random_kcnf(7, 10, 3, seed + 1000);
      auto joined = a;
      for (auto c : b) {
        for (int& lit : c) lit += lit > 0 ? 7 : -7;
        joined.push_back(c);
      }
      const auto whole = exact::brute_force_count(CnfFormula::from_ints(14, joined)).value;
      CHECK(whole == BigInt(oracle::count(a, 7)) * BigInt(oracle::count(b, 7)));
    }
  }

  TEST_CASE("untouched variables double the count") {
    const auto ints = oracle::random_kcnf(8, 14, 3, 5);
    const auto base = exact::count_exact(CnfFormula::from_ints(8, ints)).value;
    CHECK(exact::count_exact(CnfFormula::from_ints(11, ints)).value == base * 8);
  }
}
