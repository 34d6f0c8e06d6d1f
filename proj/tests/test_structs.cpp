#include "indep/errors.hpp"
#include "indep/exact.hpp"
#include "indep/harness.hpp"
#include "indep/structs.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace indep;

namespace {
std::vector<Clause> clauses(const std::vector<std::vector<int>>& ints) {
  std::vector<Clause> out;
  for (const auto& c : ints) {
    Clause cl;
    for (int lit : c) cl.push_back(Literal::from_dimacs(lit));
    out.push_back(cl);
  }
  return out;
}

// Independent count of the closed-variable assignments falsifying no clause.
std::uint64_t naive_w(const std::vector<std::vector<int>>& cs, const std::vector<int>& closed) {
  std::uint64_t w = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << closed.size()); ++b) {
    bool ok = true;
    for (const auto& c : cs) {
      bool falsified = true;
      for (int lit : c) {
        auto it = std::find(closed.begin(), closed.end(), std::abs(lit));
        if (it == closed.end()) {
          falsified = false;
          break;
        }
        const bool value = (b >> (it - closed.begin())) & 1U;
        if ((lit > 0) == value) {
          falsified = false;
          break;
        }
      }
      ok = ok && !falsified;
    }
    w += ok ? 1 : 0;
  }
  return w;
}

RecursiveCounter exact_counter() {
  return [](const CnfFormula& f, double eps, double delta, std::uint64_t seed) {
    return Estimate::exact_value(exact::count_exact(f).value, eps, delta, seed);
  };
}
}  // namespace

TEST_SUITE("structs") {
  TEST_CASE("library rows for width 3") {
    CHECK(struct_stats(clauses({{1, 2, 3}}), {3}) == StructStats{3, 7, 2, 1});
    CHECK(struct_stats(clauses({{1, 2, 3}, {1, 4, 5}}), {1}) == StructStats{5, 25, 2, 1});
    CHECK(struct_stats(clauses({{1, 2, 3}, {1, 2, 4}}), {1}) == StructStats{4, 13, 2, 1});
    CHECK(struct_stats(clauses({{1, 2, 3}, {1, 4, 5}, {2, 6, 7}}), {1, 2}) == StructStats{7, 89, 4, 2});
  }

  TEST_CASE("library rows for width 4") {
    CHECK(struct_stats(clauses({{1, 2, 3, 4}}), {4}) == StructStats{4, 15, 2, 1});
    CHECK(struct_stats(clauses({{1, 2, 3, 4}, {1, 5, 6, 7}}), {1}) == StructStats{7, 113, 2, 1});
    CHECK(struct_stats(clauses({{1, 2, 3, 4}, {1, 5, 6, 7}, {2, 8, 9, 10}}), {1, 2}) == StructStats{10, 851, 4, 2});
  }

  TEST_CASE("stats agree with the oracle") {
    for (std::uint32_t seed = 0; seed < 60; ++seed) {
      const auto ints = oracle::random_mixed(9, 4, 3, seed);
      std::vector<int> closed;
      std::vector<std::uint32_t> closed_u;
      std::set<int> vars;
      for (const auto& c : ints)
        for (int l : c) vars.insert(std::abs(l));
      int i = 0;
      for (int v : vars)
        if (i++ % 2 == 0) {
          closed.push_back(v);
          closed_u.push_back(static_cast<std::uint32_t>(v));
        }
      // rename to 1..|vars| for the oracle count
      std::map<int, int> to;
      int next = 0;
      for (int v : vars) to[v] = ++next;
      auto renamed = ints;
      for (auto& c : renamed)
        for (int& l : c) l = l > 0 ? to[l] : -to[-l];
      const auto s = struct_stats(clauses(ints), closed_u);
      CHECK(s.n_sigma == vars.size());
      CHECK(s.l_sigma == oracle::count(renamed, static_cast<unsigned>(vars.size())));
      CHECK(s.w_sigma == naive_w(ints, closed));
      CHECK(s.f_sigma == closed.size());
    }
  }

  TEST_CASE("cap") {
    std::vector<std::vector<int>> wide;
    for (int i = 0; i < 6; ++i) wide.push_back({3 * i + 1, 3 * i + 2, 3 * i + 3});
    CHECK_THROWS_AS(struct_stats(clauses(wide), {1}), GuardError);
    const Struct big = make_struct(clauses(wide), {});
    CHECK(big.l_sigma == 7 * 7 * 7 * 7 * 7 * 7);
  }

  TEST_CASE("closed structs have w = L and f = n") {
    const Struct s = make_struct(clauses({{1, -2, 3}, {-1, 4, 5}}), {1, 2, 3, 4, 5});
    CHECK(s.fully_closed());
    CHECK(s.w_sigma == s.l_sigma);
    CHECK(s.l_sigma == 24);
  }

  TEST_CASE("library matching") {
    const auto lib = StructLibrary::builtin();
    CHECK(match_library(clauses({{4, 7, 9}}), lib, 3) == std::vector<std::uint32_t>{9});
    CHECK(match_library(clauses({{1, 2, 3}, {-1, 4, 5}}), lib, 3) == std::vector<std::uint32_t>{1, 2, 3, 4, 5});
    CHECK(match_library(clauses({{-1, 2, 3}, {-1, 4, 5}}), lib, 3) == std::vector<std::uint32_t>{1});
    CHECK(match_library(clauses({{5, 2, 3}, {6, 7, 5}}), lib, 3) == std::vector<std::uint32_t>{5});
    CHECK(match_library(clauses({{1, 2, 3}, {1, 2, 4}}), lib, 3) == std::vector<std::uint32_t>{1});
    CHECK(match_library(clauses({{1, 2, 3}, {1, 4, 5}, {2, 6, 7}, {4, 8, 9}}), lib, 3).size() == 9);
    CHECK(match_library(clauses({{1, 2}}), lib, 3) == std::vector<std::uint32_t>{1, 2});
    CHECK(match_library(clauses({{1, 2, 3, 4}, {1, 5, 6, 7}}), lib, 4) == std::vector<std::uint32_t>{1});
    CHECK(match_library(clauses({{1, 2, 3, 4}, {1, 5, 6, 7}, {2, 8, 9, 10}}), lib, 4) ==
          std::vector<std::uint32_t>{1, 2});
    CHECK(lib.patterns_for(5).empty());
  }

  TEST_CASE("library text round trip and validation") {
    const auto lib = StructLibrary::builtin();
    const auto again = StructLibrary::parse(lib.to_text());
    CHECK(again.size() == lib.size());
    CHECK(again.to_text() == lib.to_text());
    StructLibrary custom;
    CHECK_THROWS_AS(custom.add(3, {clauses({{1, 2, 3}, {4, 5, 6}}), {1}}), std::invalid_argument);
    CHECK_THROWS(StructLibrary::parse("pattern 1 2 3 0 closed 3\n"));
  }

  TEST_CASE("grow: disjoint clauses stay single") {
    const auto phi = CnfFormula::from_ints(6, {{1, 2, 3}, {4, 5, 6}});
    const auto psi = grow_structs(phi, StructLibrary::builtin(), 3);
    REQUIRE(psi.size() == 2);
    for (const auto& s : psi.structs) CHECK(s.closed_vars.size() == 1);
  }

  TEST_CASE("grow: a clause touching only open variables merges") {
    const auto phi = CnfFormula::from_ints(7, {{1, 2, 3}, {2, 6, 7}});
    const auto psi = grow_structs(phi, StructLibrary::builtin(), 3);
    REQUIRE(psi.size() == 1);
    CHECK(psi.structs[0].closed_vars == std::vector<std::uint32_t>{2});
    CHECK(psi.structs[0].l_sigma == 25);
  }

  TEST_CASE("grow on random formulas: disjoint, maximal, cached stats correct") {
    const auto lib = StructLibrary::builtin();
    for (std::uint32_t seed = 0; seed < 120; ++seed) {
      const unsigned k = 3 + seed % 2;
      const unsigned n = 12 + seed % 9;
      const auto phi = generate({n, 2 * n, k, seed, false});
      const auto psi = grow_structs(phi, lib, k);
      REQUIRE(is_pairwise_disjoint(psi));
      REQUIRE(is_maximal(phi, psi));
      for (const auto& s : psi.structs) {
        if (s.n_sigma <= kStructCap) CHECK(struct_stats(s) == StructStats{s.n_sigma, s.l_sigma, s.w_sigma, s.f_sigma});
        CHECK(s.satisfying.size() == s.l_sigma);
        CHECK(s.closed_admissible.size() == s.w_sigma);
      }
    }
  }

  TEST_CASE("independent clauses") {
    const auto phi = CnfFormula::from_ints(6, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}});
    const auto psi = independent_clauses(phi);
    REQUIRE(psi.size() == 2);
    CHECK(is_maximal(phi, psi));
    CHECK(psi.structs[0].fully_closed());
  }

  TEST_CASE("closed branches enumerate prod w") {
    const auto phi = CnfFormula::from_ints(7, {{1, 2, 3}, {1, 4, 5}, {2, 6, 7}});
    const auto psi = grow_structs(phi, StructLibrary::builtin(), 3);
    REQUIRE(psi.product_w() == 4);
    std::set<std::pair<bool, bool>> seen;
    for (std::uint64_t i = 0; i < 4; ++i) {
      const auto b = closed_branch(psi, 7, i);
      seen.insert({b.get(1).value(), b.get(2).value()});
    }
    CHECK(seen.size() == 4);
    CHECK_THROWS_AS(closed_branch(psi, 7, 4), std::out_of_range);
  }

  TEST_CASE("branch sums are exact with an exact counter") {
    const auto lib = StructLibrary::builtin();
    RedOptions opts;
    opts.library = &lib;
    for (std::uint32_t seed = 0; seed < 80; ++seed) {
      const unsigned n = 9 + seed % 8;
      const auto ints = oracle::random_kcnf(n, 2 * n, 3, seed);
      const auto phi = CnfFormula::from_ints(n, ints);
      const auto psi = grow_structs(phi, lib, 3);
      const auto sum = count_over_branches(phi, psi, 3, 0.1, 0.1, exact_counter(), opts);
      CHECK(sum.exact);
      CHECK(sum.value == oracle::count(ints, n));
      opts.threads = 4;
      CHECK(count_over_branches(phi, psi, 3, 0.1, 0.1, exact_counter(), opts).value == sum.value);
      opts.threads = 1;
    }
  }

  TEST_CASE("red_structs returns one of its two outcomes") {
    const auto params = params_for(3, 9, Strategy::IndepStructs);
    const auto empty = red_structs(CnfFormula(4, {}), params, 0.1, 0.1, exact_counter());
    CHECK(empty.has_structs());
    CHECK(empty.structs().empty());
    const auto zero = red_structs(CnfFormula(3, {Clause{}}), params, 0.1, 0.1, exact_counter());
    REQUIRE_FALSE(zero.has_structs());
    CHECK(zero.estimate().value == 0);

    // Three disjoint closed structs.
    const auto phi = CnfFormula::from_ints(9, {{1, -2, 3}, {-1, 2, -3}, {4, 5, 6}, {-4, 5, -6}, {7, 8, 9}, {-7, -8, 9}});
    auto forced = params;
    forced.alpha_by_k[3] = 1e6;
    const auto r = red_structs(phi, forced, 0.1, 0.1, exact_counter());
    REQUIRE_FALSE(r.has_structs());
    CHECK(r.estimate().value == exact::count_exact(phi).value);
    forced.alpha_by_k[3] = 1.0;
    CHECK(red_structs(phi, forced, 0.1, 0.1, exact_counter()).has_structs());
  }

  TEST_CASE("red_clauses") {
    const auto phi = CnfFormula::from_ints(9, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(red_clauses(phi, 3, 0.1, 0.1, exact_counter()).structs().size() == 3);
    const auto r = red_clauses(phi, 4, 0.1, 0.1, exact_counter());
    REQUIRE_FALSE(r.has_structs());
    CHECK(r.estimate().value == 343);
    const auto none = red_clauses(CnfFormula(5, {}), 1, 0.1, 0.1, exact_counter());
    REQUIRE_FALSE(none.has_structs());
    CHECK(none.estimate().value == 32);
    CHECK(red_clauses(CnfFormula(5, {}), 0, 0.1, 0.1, exact_counter()).has_structs());
  }

  TEST_CASE("pay-off test") {
    StructSet psi;
    psi.structs.push_back(make_struct(clauses({{1, 2, 3}}), {3}));
    CHECK(structs_pay_off(psi, 3, 1.5, 1.2) == (std::pow(1.2, 3) * 2 / 1.2 >= std::pow(1.5, 3)));
    CHECK(structs_pay_off(StructSet{}, 10, 1.2, 1.3));
    CHECK_FALSE(structs_pay_off(StructSet{}, 10, 1.3, 1.2));
  }
}
