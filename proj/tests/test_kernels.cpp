#include "indep/kernels.hpp"
#include "indep/structs.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace indep;

TEST_SUITE("kernels") {
  TEST_CASE("model counting: serial and parallel agree with the oracle") {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
      const unsigned n = 8 + seed % 10;
      const auto ints = oracle::random_kcnf(n, 3 * n, 3, seed);
      const auto masks = kernels::to_masks(CnfFormula::from_ints(n, ints));
      const auto truth = oracle::count(ints, n);
      CHECK(kernels::count_models_serial(masks) == truth);
      CHECK(kernels::count_models_parallel(masks, 4) == truth);
    }
  }

  TEST_CASE("hit counting is identical for every thread count") {
    const auto phi = CnfFormula::from_ints(20, oracle::random_kcnf(20, 40, 3, 8));
    const auto psi = independent_clauses(phi);
    std::vector<kernels::SamplingPlan::Block> blocks;
    for (const auto& s : psi.structs) blocks.push_back({s.vars, s.satisfying});
    const auto plan = kernels::make_plan(phi, blocks);
    const std::uint64_t samples = 5 * kernels::kChunk + 123;
    const auto serial = kernels::count_hits_serial(plan, samples, 99);
    for (int t : {1, 2, 3, 8}) CHECK(kernels::count_hits_parallel(plan, samples, 99, t) == serial);
    CHECK(kernels::count_hits_serial(plan, samples, 100) != serial);
  }

  TEST_CASE("plan validation") {
    const auto phi = CnfFormula::from_ints(4, {{1, 2}});
    CHECK_THROWS(kernels::make_plan(phi, {{{1, 2}, {1}}, {{2, 3}, {1}}}));
    CHECK_THROWS(kernels::make_plan(phi, {{{1}, {}}}));
  }
}
