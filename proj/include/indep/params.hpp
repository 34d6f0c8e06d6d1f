#pragma once

#include "indep/bigint.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace indep {

enum class Strategy { BruteForce, Thurley, PrunedTree, IndepClauses, IndepStructs };

std::string_view to_string(Strategy s);
/// Accepts brute|thurley|pruned|clauses|structs.
std::optional<Strategy> parse_strategy(std::string_view name);

/// Constants and thresholds of one (k, n, strategy) run.
struct ParamSet {
  Strategy strategy = Strategy::IndepStructs;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  /// log2 of the base of the randomized k-SAT decider's running time (0 for k <= 2).
  double beta_k = 0.0;
  /// PPSZ series value; only set for k >= 5.
  std::optional<double> mu_k;
  /// Runtime bases of the struct scheme by clause width (index 2.. k).
  std::map<std::uint32_t, double> alpha_by_k;
  /// 2^(1/(2 - beta_k)).
  double theta_k = 0.0;
  /// Exponent of the pruned-tree scheme: running time (2^p_k)^n.
  double p_k = 0.0;
  /// Base of the strategy's running time bound.
  double time_base = 0.0;
  double ell_log2 = 0.0;
  BigInt ell = 1;
  /// Clause mode: m_hat = ceil(m_hat_fraction * n).
  double m_hat_fraction = 0.0;
  std::uint32_t m_hat = 0;

  double alpha(std::uint32_t width) const;
};

/// sum_{j>=1} 1 / (j (j + 1/(k-1))) to absolute error <= tol.
double mu_k(std::uint32_t k, double tol = 1e-12);

/// Randomized decider exponent: 0.3864 (k=3), 0.5548 (k=4), 1 - mu_k/(k-1) (k>=5).
double beta_k(std::uint32_t k);
double theta_k(std::uint32_t k);
double p_k(std::uint32_t k);
/// alpha_2 = 1.2377, alpha_3 = 1.51426, alpha_4 = 1.60816, theta_k beyond.
double default_alpha(std::uint32_t k);

/// Throws std::invalid_argument for k < 2 or an unsupported (k, strategy) pair.
ParamSet params_for(std::uint32_t k, std::uint32_t n, Strategy strategy);

}  // namespace indep
