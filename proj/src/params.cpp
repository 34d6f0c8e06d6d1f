#include "indep/params.hpp"

#include <cmath>
#include <stdexcept>

namespace indep {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::BruteForce: return "brute";
    case Strategy::Thurley: return "thurley";
    case Strategy::PrunedTree: return "pruned";
    case Strategy::IndepClauses: return "clauses";
    case Strategy::IndepStructs: return "structs";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (auto s : {Strategy::BruteForce, Strategy::Thurley, Strategy::PrunedTree, Strategy::IndepClauses,
                 Strategy::IndepStructs})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

double mu_k(std::uint32_t k, double tol) {
  if (k < 2) throw std::invalid_argument("mu_k: k must be at least 2");
  if (!(tol > 0.0)) throw std::invalid_argument("mu_k: tol must be positive");
  const double a = 1.0 / static_cast<double>(k - 1);
  // The tail beyond N lies between the integrals of 1/(x(x+a)) from N+1 and
  // from N; taking their midpoint leaves an error of at most half their gap,
  // which is below 1/(2 N^2).
  const auto terms = static_cast<std::uint64_t>(std::ceil(1.0 / std::sqrt(tol))) + 1;
  const double n = static_cast<double>(terms);
  auto tail_from = [a](double x) { return std::log1p(a / x) / a; };
  double sum = 0.0;
  for (std::uint64_t j = terms; j >= 1; --j) {
    const double x = static_cast<double>(j);
    sum += 1.0 / (x * (x + a));
  }
  return sum + 0.5 * (tail_from(n) + tail_from(n + 1.0));
}

double beta_k(std::uint32_t k) {
  if (k < 3) throw std::invalid_argument("beta_k is defined for k >= 3");
  if (k == 3) return 0.3864;
  if (k == 4) return 0.5548;
  return 1.0 - mu_k(k) / static_cast<double>(k - 1);
}

double theta_k(std::uint32_t k) { return std::exp2(1.0 / (2.0 - beta_k(k))); }

double p_k(std::uint32_t k) {
  const double beta = beta_k(k);
  const double ratio = static_cast<double>(k) / std::log2(std::exp2(static_cast<double>(k)) - 1.0);
  return (1.0 - beta * (ratio - 1.0)) / (2.0 - beta * ratio);
}

double default_alpha(std::uint32_t k) {
  switch (k) {
    case 2: return 1.2377;
    case 3: return 1.51426;
    case 4: return 1.60816;
    default:
      if (k < 2) throw std::invalid_argument("alpha_k is defined for k >= 2");
      return theta_k(k);
  }
}

double ParamSet::alpha(std::uint32_t width) const {
  if (auto it = alpha_by_k.find(width); it != alpha_by_k.end()) return it->second;
  return default_alpha(width);
}

ParamSet params_for(std::uint32_t k, std::uint32_t n, Strategy strategy) {
  if (k < 2) throw std::invalid_argument("params_for: k must be at least 2");
  ParamSet p;
  p.strategy = strategy;
  p.k = k;
  p.n = n;
  for (std::uint32_t w = 2; w <= k; ++w) p.alpha_by_k[w] = default_alpha(w);
  const double nd = static_cast<double>(n);

  if (k == 2) {
    p.time_base = default_alpha(2);
    return p;
  }
  p.beta_k = beta_k(k);
  if (k >= 5) p.mu_k = mu_k(k);
  p.theta_k = theta_k(k);
  p.p_k = p_k(k);
  const double thurley_ell = nd * (1.0 - p.beta_k) / (2.0 - p.beta_k);

  switch (strategy) {
    case Strategy::BruteForce:
      p.time_base = 2.0;
      break;
    case Strategy::Thurley:
      p.ell_log2 = thurley_ell;
      p.time_base = p.theta_k;
      break;
    case Strategy::PrunedTree: {
      const double ratio = static_cast<double>(k) / std::log2(std::exp2(static_cast<double>(k)) - 1.0);
      p.ell_log2 = nd * (1.0 - p.beta_k) / (2.0 - p.beta_k * ratio);
      p.time_base = std::exp2(p.p_k);
      break;
    }
    case Strategy::IndepClauses:
      if (k == 3) {
        p.ell_log2 = nd * std::log2(1.2903);
        p.m_hat_fraction = 0.1563;
        p.time_base = 1.5181;
      } else if (k == 4) {
        p.ell_log2 = nd * std::log2(1.2372);
        p.m_hat_fraction = 0.0587;
        p.time_base = 1.6105;
      } else {
        throw std::invalid_argument("clause strategy has constants for k = 3 and k = 4 only");
      }
      p.m_hat = static_cast<std::uint32_t>(std::ceil(p.m_hat_fraction * nd));
      break;
    case Strategy::IndepStructs:
      if (k == 3) {
        p.ell_log2 = nd * std::log2(1.28794);
      } else if (k == 4) {
        p.ell_log2 = nd * std::log2(1.23823);
      } else {
        p.ell_log2 = thurley_ell;
      }
      p.time_base = p.alpha(k);
      break;
  }
  p.ell = ceil_exp2(p.ell_log2);
  return p;
}

}  // namespace indep
