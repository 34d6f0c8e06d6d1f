#include "indep/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace indep {

bool Estimate::within(const BigInt& truth, double eps) const {
  const Rational t(truth);
  const Rational e(eps);
  return value >= (Rational(1) - e) * t && value <= (Rational(1) + e) * t;
}

Universe make_universe(StructSet psi, std::uint32_t n) {
  if (!is_pairwise_disjoint(psi)) throw std::invalid_argument("universe: structs share variables");
  for (const auto& s : psi.structs)
    for (auto v : s.vars)
      if (v == 0 || v > n) throw std::invalid_argument("universe: struct variable outside 1..n");
  Universe u;
  u.n = n;
  u.size = pow2(n - psi.total_vars()) * psi.product_l();
  u.psi = std::move(psi);
  return u;
}

kernels::SamplingPlan sampling_plan(const CnfFormula& phi, const Universe& universe) {
  if (phi.num_vars() != universe.n) throw std::invalid_argument("universe: variable count differs from formula");
  std::vector<kernels::SamplingPlan::Block> blocks;
  blocks.reserve(universe.psi.size());
  for (const auto& s : universe.psi.structs) blocks.push_back({s.vars, s.satisfying});
  return kernels::make_plan(phi, std::move(blocks));
}

PartialAssignment sample_universe(const Universe& universe, Rng& rng) {
  const kernels::SamplingPlan plan = sampling_plan(CnfFormula(universe.n, {}), universe);
  std::vector<std::uint8_t> values(universe.n + 1, 0);
  kernels::draw(plan, rng, values);
  PartialAssignment b(universe.n);
  for (std::uint32_t v = 1; v <= universe.n; ++v) b.set(v, values[v] != 0);
  return b;
}

BigInt sample_size(const BigInt& universe_size, const BigInt& ell, double eps, double delta) {
  if (ell < 1) throw std::invalid_argument("sample_size: ell must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("sample_size: eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("sample_size: delta must lie in (0, 1)");
  // T = ceil(c * U / ell) with c = 3 ln(2/delta) / eps^2 carried as a rational.
  // The 1e-12 relative slack absorbs rounding in ln so exact products stay exact.
  const double c = 3.0 * std::log(2.0 / delta) / (eps * eps) * (1.0 - 1e-12);
  const Rational scaled = Rational(c) * Rational(universe_size) / Rational(ell);
  BigInt t = numerator(scaled) / denominator(scaled);
  if (Rational(t) < scaled) t += 1;
  return t;
}

Estimate mc_estimate(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double eps, double delta,
                     std::uint64_t seed, const McOptions& options) {
  const Universe universe = make_universe(psi, phi.num_vars());
  const BigInt wanted = sample_size(universe.size, ell, eps, delta);
  Estimate e;
  e.epsilon = eps;
  e.delta = delta;
  e.seed = seed;
  std::uint64_t samples = options.budget;
  if (wanted <= BigInt(options.budget)) {
    samples = wanted.convert_to<std::uint64_t>();
  } else {
    e.under_sampled = true;
  }
  samples = std::max<std::uint64_t>(samples, 1);
  const kernels::SamplingPlan plan = sampling_plan(phi, universe);
  const std::uint64_t hits = options.serial ? kernels::count_hits_serial(plan, samples, seed)
                                            : kernels::count_hits_parallel(plan, samples, seed, options.threads);
  e.samples = samples;
  e.hits = hits;
  e.work.samples = samples;
  e.value = Rational(BigInt(hits) * universe.size, BigInt(samples));
  return e;
}

Estimate median_boost(std::vector<Estimate> runs) {
  if (runs.empty() || runs.size() % 2 == 0) throw std::invalid_argument("median_boost needs an odd number of runs");
  const auto mid = runs.begin() + static_cast<std::ptrdiff_t>(runs.size() / 2);
  std::nth_element(runs.begin(), mid, runs.end(),
                   [](const Estimate& a, const Estimate& b) { return a.value < b.value; });
  return *mid;
}

}  // namespace indep
