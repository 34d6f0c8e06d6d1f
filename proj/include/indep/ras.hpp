#pragma once

#include "indep/cnf.hpp"
#include "indep/decider.hpp"
#include "indep/estimate.hpp"
#include "indep/params.hpp"
#include "indep/structs.hpp"

#include <cstdint>
#include <map>

namespace indep {

struct RasOptions {
  /// Formulas with at most this many variables are counted exactly.
  std::uint32_t small_n = 18;
  /// Worker threads for sampling and branch sums; 0 lets OpenMP decide.
  int threads = 0;
  /// Per-run cap on Monte Carlo samples.
  std::uint64_t budget = std::uint64_t{1} << 32;
  /// RandomWalkDecider when null.
  const Decider* decider = nullptr;
  /// Builtin library when null.
  const StructLibrary* library = nullptr;
  /// Replaces alpha_k for the given widths.
  std::map<std::uint32_t, double> alpha_override;
};

/// Randomized approximation of #phi: with probability >= 1 - delta the value
/// is within a factor (1 +- eps). Exact results carry exact = true.
/// Throws std::invalid_argument unless 0 < eps <= 1 and 0 < delta < 1/2.
Estimate approx_count(const CnfFormula& phi, double eps, double delta, Strategy strategy, std::uint64_t seed,
                      const RasOptions& options = {});

}  // namespace indep
