#include "indep/exact.hpp"
#include "indep/harness.hpp"

#include <doctest.h>

#include <set>

using namespace indep;

TEST_SUITE("harness") {
  TEST_CASE("generator") {
    CHECK(generate({3, 0, 3, 1, false}).num_clauses() == 0);
    const GeneratorSpec spec{20, 50, 3, 7, false};
    CHECK(generate(spec) == generate(spec));
    CHECK_FALSE(generate(spec) == generate({20, 50, 3, 8, false}));
    const auto phi = generate(spec);
    std::set<Clause> distinct(phi.clauses().begin(), phi.clauses().end());
    CHECK(distinct.size() == 50);
    for (const auto& c : phi.clauses()) CHECK(c.size() == 3);
    CHECK_THROWS_AS(generate({2, 5, 3, 1, false}), std::invalid_argument);
    // 4 variables, width 3: only 32 distinct clauses exist
    CHECK(generate({4, 40, 3, 1, false}).num_clauses() == 40);
  }

  TEST_CASE("planted formulas are satisfiable") {
    for (std::uint64_t s = 0; s < 50; ++s)
      CHECK(exact::count_exact(generate({14, 90, 3, s, true})).value >= 1);
  }

  TEST_CASE("chi-square") {
    CHECK(chi_square_counts({10, 10, 10, 10}).statistic == 0.0);
    CHECK(chi_square_counts({10, 10, 10, 10}).p_value == doctest::Approx(1.0));
    CHECK(chi_square_counts({1000, 0, 0, 0, 0, 0, 0, 0}).p_value < 1e-12);
    // 3 cells, statistic 2: p = exp(-1)
    CHECK(chi_square_counts({10, 20, 30}).statistic == doctest::Approx(10.0));
    CHECK(chi_square_counts({12, 8, 10}).p_value == doctest::Approx(std::exp(-0.4)));

    const auto u = make_universe({}, 4);
    std::vector<PartialAssignment> same(100, PartialAssignment(4));
    for (auto& b : same)
      for (std::uint32_t v = 1; v <= 4; ++v) b.set(v, false);
    CHECK(chi_square_uniformity(same, u).p_value < 1e-10);
    CHECK_THROWS(chi_square_uniformity(same, make_universe({}, 20)));
  }

  TEST_CASE("report schema") {
    RunReport r;
    r.source = "gen";
    r.generator = GeneratorSpec{10, 20, 3, 4, false};
    r.n = 10;
    r.m = 20;
    r.k = 3;
    r.strategy = Strategy::Thurley;
    r.params = params_for(3, 10, Strategy::Thurley);
    r.estimate = Estimate::exact_value(5, 0.1, 0.1, 9);
    r.reference = BigInt(5);
    const auto j = r.to_json();
    CHECK(j["schema"] == "indep.run/1");
    CHECK(j["estimate"]["value"] == "5");
    CHECK(j["within_epsilon"] == true);
    CHECK(j["instance"]["generator"]["mode"] == "uniform");
    CHECK(j["params"]["ell"] == to_string(params_for(3, 10, Strategy::Thurley).ell));
    for (const char* key : {"schema", "instance", "strategy", "params", "estimate", "work", "wall_seconds", "threads",
                            "reference", "within_epsilon"})
      CHECK(j.contains(key));
    const auto header = csv_header();
    const auto row = csv_row(3, r);
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
  }
}
