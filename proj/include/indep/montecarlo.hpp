#pragma once

#include "indep/bigint.hpp"
#include "indep/cnf.hpp"
#include "indep/estimate.hpp"
#include "indep/kernels.hpp"
#include "indep/rng.hpp"
#include "indep/structs.hpp"

#include <cstdint>
#include <vector>

namespace indep {

/// Assignments of 1..n satisfying every struct of psi.
struct Universe {
  StructSet psi;
  std::uint32_t n = 0;
  /// 2^(n - sum n_sigma) * prod L_sigma.
  BigInt size = 0;
};

/// Throws std::invalid_argument if psi uses a variable outside 1..n or its
/// structs overlap.
Universe make_universe(StructSet psi, std::uint32_t n);

/// One uniform draw from U_psi: a uniform satisfying assignment per struct,
/// fair coins elsewhere.
PartialAssignment sample_universe(const Universe& universe, Rng& rng);

/// ceil(3 ln(2/delta) U / (eps^2 ell)).
BigInt sample_size(const BigInt& universe_size, const BigInt& ell, double eps, double delta);

struct McOptions {
  /// Largest sample count actually drawn; beyond it the estimate is flagged under_sampled.
  std::uint64_t budget = std::uint64_t{1} << 32;
  /// 0 lets OpenMP decide.
  int threads = 0;
  /// Use the single-threaded reference kernel.
  bool serial = false;
};

kernels::SamplingPlan sampling_plan(const CnfFormula& phi, const Universe& universe);

/// Draws sample_size(...) assignments from U_psi and returns hits / T * |U|.
/// The guarantee needs #phi >= ell.
Estimate mc_estimate(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double eps, double delta,
                     std::uint64_t seed, const McOptions& options = {});

/// Median by value of an odd number of runs. Throws std::invalid_argument otherwise.
Estimate median_boost(std::vector<Estimate> runs);

}  // namespace indep
