#include "indep/ras.hpp"

#include "indep/cut.hpp"
#include "indep/exact.hpp"
#include "indep/montecarlo.hpp"

#include <stdexcept>

namespace indep {

namespace {

struct Context {
  Strategy strategy;
  const RasOptions& options;
  const Decider* decider;
  std::uint32_t top_k;
};

void apply_overrides(ParamSet& params, const RasOptions& options) {
  for (const auto& [width, alpha] : options.alpha_override) params.alpha_by_k[width] = alpha;
}

Estimate from_cut(const CutResult& r, double eps, double delta, std::uint64_t seed) {
  Estimate e = Estimate::exact_value(r.count, eps, delta, seed);
  e.work.branch_nodes = r.branch_nodes;
  e.work.decider_calls = r.decider_calls;
  return e;
}

Estimate cut_then_sample(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double eps, double delta,
                         std::uint64_t seed, Branching branching, const Context& ctx) {
  CutOptions co;
  co.branching = branching;
  co.decider = ctx.decider;
  co.seed = derive_seed(seed, 2);
  co.check_residual_width = branching == Branching::StructGuided;
  const CutResult r = cut(phi, psi, ell, delta, co);
  if (r.kind == CutKind::Exact) return from_cut(r, eps, delta, seed);

  McOptions mo;
  mo.budget = ctx.options.budget;
  mo.threads = ctx.options.threads;
  Estimate e = mc_estimate(phi, psi, ell, eps, delta, derive_seed(seed, 3), mo);
  e.seed = seed;
  e.work.branch_nodes += r.branch_nodes;
  e.work.decider_calls += r.decider_calls;
  return e;
}

Estimate run(const CnfFormula& phi, double eps, double delta, std::uint64_t seed, std::uint32_t depth,
             const Context& ctx) {
  if (phi.has_empty_clause()) return Estimate::exact_value(0, eps, delta, seed);
  const std::uint32_t k = phi.max_clause_length();
  const std::uint32_t n = phi.num_vars();
  if (k == 0) return Estimate::exact_value(pow2(n), eps, delta, seed);

  if (ctx.strategy == Strategy::BruteForce) {
    const auto c = exact::brute_force_count(phi, exact::kBruteForceGuard, ctx.options.threads);
    Estimate e = Estimate::exact_value(c.value, eps, delta, seed);
    e.work.exact_nodes = c.nodes_visited;
    return e;
  }
  if (n <= ctx.options.small_n || k <= 2) {
    const auto c = exact::count_exact(phi);
    Estimate e = Estimate::exact_value(c.value, eps, delta, seed);
    e.work.exact_nodes = c.nodes_visited;
    return e;
  }
  if (depth + 2 > ctx.top_k) throw std::logic_error("recursion deeper than k - 2");

  ParamSet params = params_for(k, n, ctx.strategy);
  apply_overrides(params, ctx.options);

  switch (ctx.strategy) {
    case Strategy::Thurley:
      return cut_then_sample(phi, {}, params.ell, eps, delta, seed, Branching::Binary, ctx);
    case Strategy::PrunedTree:
      return cut_then_sample(phi, {}, params.ell, eps, delta, seed, Branching::PrunedClause, ctx);
    case Strategy::IndepClauses:
    case Strategy::IndepStructs: {
      const RecursiveCounter counter = [&ctx, depth](const CnfFormula& sub, double e, double d, std::uint64_t s) {
        return run(sub, e, d, s, depth + 1, ctx);
      };
      RedOptions ro;
      ro.library = ctx.options.library;
      ro.seed = derive_seed(seed, 1);
      ro.threads = ctx.options.threads;
      const RedOutcome red = ctx.strategy == Strategy::IndepStructs
                                 ? red_structs(phi, params, eps, delta, counter, ro)
                                 : red_clauses(phi, params.m_hat, eps, delta, counter, ro);
      if (!red.has_structs()) {
        Estimate e = red.estimate();
        e.seed = seed;
        return e;
      }
      return cut_then_sample(phi, red.structs(), params.ell, eps, delta, seed, Branching::StructGuided, ctx);
    }
    case Strategy::BruteForce:
      break;
  }
  throw std::logic_error("unhandled strategy");
}

}  // namespace

Estimate approx_count(const CnfFormula& phi, double eps, double delta, Strategy strategy, std::uint64_t seed,
                      const RasOptions& options) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  const RandomWalkDecider fallback;
  const Context ctx{strategy, options, options.decider ? options.decider : &fallback,
                    std::max<std::uint32_t>(phi.max_clause_length(), 2)};
  return run(phi, eps, delta, seed, 0, ctx);
}

}  // namespace indep
