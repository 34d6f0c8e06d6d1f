#include "indep/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace indep::kernels {

ClauseMasks to_masks(const CnfFormula& phi) {
  if (phi.num_vars() > 64) throw std::invalid_argument("bitmask form holds at most 64 variables");
  ClauseMasks out;
  out.num_vars = phi.num_vars();
  out.positive.reserve(phi.num_clauses());
  out.negative.reserve(phi.num_clauses());
  for (const auto& c : phi.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& lit : c) (lit.negated ? neg : pos) |= std::uint64_t{1} << (lit.var - 1);
    out.positive.push_back(pos);
    out.negative.push_back(neg);
  }
  return out;
}

namespace {

inline bool all_clauses_hold(const ClauseMasks& cnf, std::uint64_t a) {
  const std::size_t m = cnf.positive.size();
  for (std::size_t c = 0; c < m; ++c)
    if (((a & cnf.positive[c]) | (~a & cnf.negative[c])) == 0) return false;
  return true;
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

std::uint64_t count_models_serial(const ClauseMasks& cnf) {
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < total; ++a) count += all_clauses_hold(cnf, a);
  return count;
}

std::uint64_t count_models_parallel(const ClauseMasks& cnf, int threads) {
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << cnf.num_vars);
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) num_threads(resolve_threads(threads))
  for (std::int64_t a = 0; a < total; ++a) count += all_clauses_hold(cnf, static_cast<std::uint64_t>(a));
  return count;
}

SamplingPlan make_plan(const CnfFormula& phi, std::vector<SamplingPlan::Block> blocks) {
  SamplingPlan plan;
  plan.num_vars = phi.num_vars();
  std::vector<char> covered(phi.num_vars() + 1, 0);
  for (const auto& b : blocks) {
    if (b.vars.size() > 64) throw std::invalid_argument("sampling block wider than 64 variables");
    if (b.assignments.empty()) throw std::invalid_argument("sampling block with no admissible assignment");
    for (auto v : b.vars) {
      if (v == 0 || v > phi.num_vars() || covered[v]) throw std::invalid_argument("sampling blocks overlap or leave range");
      covered[v] = 1;
    }
  }
  plan.blocks = std::move(blocks);
  for (std::uint32_t v = 1; v <= phi.num_vars(); ++v)
    if (!covered[v]) plan.free_vars.push_back(v);
  for (const auto& c : phi.clauses()) {
    for (const auto& lit : c) plan.literals.push_back(lit.to_dimacs());
    plan.clause_begin.push_back(static_cast<std::uint32_t>(plan.literals.size()));
  }
  return plan;
}

void draw(const SamplingPlan& plan, Rng& rng, std::vector<std::uint8_t>& values) {
  values.resize(plan.num_vars + 1);
  for (const auto& block : plan.blocks) {
    const std::uint64_t pick = block.assignments[rng.below(block.assignments.size())];
    for (std::size_t i = 0; i < block.vars.size(); ++i) values[block.vars[i]] = static_cast<std::uint8_t>((pick >> i) & 1U);
  }
  std::uint64_t bits = 0;
  int left = 0;
  for (auto v : plan.free_vars) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    values[v] = static_cast<std::uint8_t>(bits & 1U);
    bits >>= 1;
    --left;
  }
}

bool satisfies(const SamplingPlan& plan, const std::vector<std::uint8_t>& values) {
  const std::size_t m = plan.clause_begin.size() - 1;
  for (std::size_t c = 0; c < m; ++c) {
    bool sat = false;
    for (std::uint32_t i = plan.clause_begin[c]; i < plan.clause_begin[c + 1] && !sat; ++i) {
      const std::int32_t lit = plan.literals[i];
      sat = lit > 0 ? values[lit] != 0 : values[-lit] == 0;
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

std::uint64_t chunk_hits(const SamplingPlan& plan, std::uint64_t chunk, std::uint64_t samples, std::uint64_t seed,
                         std::vector<std::uint8_t>& scratch) {
  Rng rng = Rng(seed).split(chunk);
  const std::uint64_t first = chunk * kChunk;
  const std::uint64_t last = std::min(samples, first + kChunk);
  std::uint64_t hits = 0;
  for (std::uint64_t s = first; s < last; ++s) {
    draw(plan, rng, scratch);
    hits += satisfies(plan, scratch);
  }
  return hits;
}

}  // namespace

std::uint64_t count_hits_serial(const SamplingPlan& plan, std::uint64_t samples, std::uint64_t seed) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint8_t> scratch(plan.num_vars + 1);
  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) hits += chunk_hits(plan, c, samples, seed, scratch);
  return hits;
}

std::uint64_t count_hits_parallel(const SamplingPlan& plan, std::uint64_t samples, std::uint64_t seed, int threads) {
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::uint64_t hits = 0;
#pragma omp parallel num_threads(resolve_threads(threads)) reduction(+ : hits)
  {
    std::vector<std::uint8_t> scratch(plan.num_vars + 1);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c)
      hits += chunk_hits(plan, static_cast<std::uint64_t>(c), samples, seed, scratch);
  }
  return hits;
}

}  // namespace indep::kernels
