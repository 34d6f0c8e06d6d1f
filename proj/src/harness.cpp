#include "indep/harness.hpp"

#include "indep/rng.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace indep {

namespace {

Clause random_clause(const GeneratorSpec& spec, Rng& rng, const std::vector<std::uint8_t>& hidden) {
  // partial Fisher-Yates over 1..n
  std::vector<std::uint32_t> pool(spec.n);
  for (std::uint32_t i = 0; i < spec.n; ++i) pool[i] = i + 1;
  Clause c;
  for (std::uint32_t i = 0; i < spec.k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(spec.n - i));
    std::swap(pool[i], pool[j]);
    c.push_back({pool[i], rng.coin()});
  }
  if (spec.planted) {
    while (std::none_of(c.begin(), c.end(), [&](const Literal& l) { return l.satisfied_by(hidden[l.var] != 0); }))
      for (auto& l : c) l.negated = rng.coin();
  }
  std::sort(c.begin(), c.end());
  return c;
}

std::string rational_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

}  // namespace

CnfFormula generate(const GeneratorSpec& spec) {
  if (spec.k == 0) throw std::invalid_argument("generator: k must be positive");
  if (spec.n < spec.k) throw std::invalid_argument("generator: n must be at least k");
  Rng rng(spec.seed);
  std::vector<std::uint8_t> hidden(spec.n + 1, 0);
  if (spec.planted)
    for (std::uint32_t v = 1; v <= spec.n; ++v) hidden[v] = rng.coin() ? 1 : 0;

  std::set<Clause> seen;
  std::vector<Clause> clauses;
  clauses.reserve(spec.m);
  constexpr int kAttempts = 64;
  for (std::uint32_t i = 0; i < spec.m; ++i) {
    Clause c = random_clause(spec, rng, hidden);
    for (int a = 1; a < kAttempts && seen.count(c); ++a) c = random_clause(spec, rng, hidden);
    seen.insert(c);
    clauses.push_back(std::move(c));
  }
  return CnfFormula(spec.n, std::move(clauses), spec.k);
}

ChiSquare chi_square_counts(const std::vector<std::uint64_t>& counts) {
  ChiSquare out;
  out.cells = counts.size();
  if (counts.size() < 2) return out;
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0) throw std::invalid_argument("chi-square: no samples");
  const double expected = total / static_cast<double>(counts.size());
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    out.statistic += d * d / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  out.p_value = boost::math::gamma_q(dof / 2.0, out.statistic / 2.0);
  return out;
}

ChiSquare chi_square_uniformity(const std::vector<PartialAssignment>& samples, const Universe& universe) {
  if (universe.size > BigInt(kMaxChiSquareCells)) throw std::invalid_argument("chi-square: universe too large");
  if (universe.n > 64) throw std::invalid_argument("chi-square: more than 64 variables");
  const auto cells = universe.size.convert_to<std::uint64_t>();
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& b : samples) {
    std::uint64_t key = 0;
    for (std::uint32_t v = 1; v <= universe.n; ++v) {
      const auto value = b.get(v);
      if (!value) throw std::invalid_argument("chi-square: sample leaves a variable unset");
      if (*value) key |= std::uint64_t{1} << (v - 1);
    }
    for (const auto& s : universe.psi.structs) {
      std::uint64_t local = 0;
      for (std::size_t i = 0; i < s.vars.size(); ++i)
        if ((key >> (s.vars[i] - 1)) & 1U) local |= std::uint64_t{1} << i;
      if (!std::binary_search(s.satisfying.begin(), s.satisfying.end(), local))
        throw std::invalid_argument("chi-square: sample outside the universe");
    }
    ++hist[key];
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(cells);
  for (const auto& [key, c] : hist) counts.push_back(c);
  counts.resize(cells, 0);  // cells never drawn
  return chi_square_counts(counts);
}

nlohmann::json params_json(const ParamSet& p) {
  nlohmann::json alphas = nlohmann::json::object();
  for (const auto& [w, a] : p.alpha_by_k) alphas[std::to_string(w)] = a;
  nlohmann::json j{{"strategy", std::string(to_string(p.strategy))},
                   {"k", p.k},
                   {"n", p.n},
                   {"beta_k", p.beta_k},
                   {"alpha_by_k", alphas},
                   {"theta_k", p.theta_k},
                   {"p_k", p.p_k},
                   {"time_base", p.time_base},
                   {"ell_log2", p.ell_log2},
                   {"ell", to_string(p.ell)},
                   {"m_hat_fraction", p.m_hat_fraction},
                   {"m_hat", p.m_hat}};
  j["mu_k"] = p.mu_k ? nlohmann::json(*p.mu_k) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json estimate_json(const Estimate& e) {
  return {{"value", rational_string(e.value)},
          {"value_approx", to_double(e.value)},
          {"exact", e.exact},
          {"epsilon", e.epsilon},
          {"delta", e.delta},
          {"samples", e.samples},
          {"hits", e.hits},
          {"seed", e.seed},
          {"under_sampled", e.under_sampled}};
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json instance{{"source", source}, {"n", n}, {"m", m}, {"k", k}};
  if (!path.empty()) instance["path"] = path;
  if (generator)
    instance["generator"] = {{"n", generator->n},
                             {"m", generator->m},
                             {"k", generator->k},
                             {"seed", generator->seed},
                             {"mode", generator->planted ? "planted" : "uniform"}};
  nlohmann::json j{{"schema", kSchema},
                   {"instance", instance},
                   {"strategy", std::string(to_string(strategy))},
                   {"params", params ? params_json(*params) : nlohmann::json(nullptr)},
                   {"estimate", estimate_json(estimate)},
                   {"work",
                    {{"decider_calls", estimate.work.decider_calls},
                     {"branch_nodes", estimate.work.branch_nodes},
                     {"samples", estimate.work.samples},
                     {"recursive_calls", estimate.work.recursive_calls},
                     {"exact_nodes", estimate.work.exact_nodes}}},
                   {"wall_seconds", wall_seconds},
                   {"threads", threads}};
  if (reference) {
    j["reference"] = to_string(*reference);
    j["within_epsilon"] = estimate.within(*reference, estimate.epsilon);
  } else {
    j["reference"] = nullptr;
    j["within_epsilon"] = nullptr;
  }
  return j;
}

std::string csv_header() {
  return "trial,strategy,n,m,k,instance_seed,run_seed,value,exact,reference,within_epsilon,samples,decider_calls,"
         "branch_nodes,wall_seconds";
}

std::string csv_row(std::size_t trial, const RunReport& r) {
  std::ostringstream out;
  out << trial << ',' << to_string(r.strategy) << ',' << r.n << ',' << r.m << ',' << r.k << ','
      << (r.generator ? std::to_string(r.generator->seed) : "") << ',' << r.estimate.seed << ','
      << to_double(r.estimate.value) << ',' << (r.estimate.exact ? 1 : 0) << ','
      << (r.reference ? to_string(*r.reference) : "") << ','
      << (r.reference ? (r.estimate.within(*r.reference, r.estimate.epsilon) ? "1" : "0") : "") << ','
      << r.estimate.work.samples << ',' << r.estimate.work.decider_calls << ',' << r.estimate.work.branch_nodes << ','
      << r.wall_seconds;
  return out.str();
}

}  // namespace indep
