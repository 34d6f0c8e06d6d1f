#include "indep/decider.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace indep {

namespace {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& phi) : phi_(phi), value_(phi.num_vars() + 1, -1) {}

  bool solve() { return search(); }

  PartialAssignment model() const {
    PartialAssignment out(phi_.num_vars());
    for (std::uint32_t v = 1; v <= phi_.num_vars(); ++v) out.set(v, value_[v] == 1);
    return out;
  }

 private:
  const CnfFormula& phi_;
  std::vector<std::int8_t> value_;
  std::vector<std::uint32_t> trail_;

  int lit_value(const Literal& lit) const {
    const std::int8_t v = value_[lit.var];
    if (v < 0) return -1;
    return lit.satisfied_by(v == 1) ? 1 : 0;
  }

  void set(const Literal& lit) {
    value_[lit.var] = lit.negated ? 0 : 1;
    trail_.push_back(lit.var);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  // Returns false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : phi_.clauses()) {
        int open = 0;
        const Literal* last = nullptr;
        bool sat = false;
        for (const auto& lit : c) {
          const int v = lit_value(lit);
          if (v == 1) {
            sat = true;
            break;
          }
          if (v < 0) ++open, last = &lit;
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          set(*last);
          changed = true;
        }
      }
    }
    return true;
  }

  const Literal* pick() const {
    const Literal* best = nullptr;
    std::size_t best_open = std::numeric_limits<std::size_t>::max();
    for (const auto& c : phi_.clauses()) {
      std::size_t open = 0;
      const Literal* first = nullptr;
      bool sat = false;
      for (const auto& lit : c) {
        const int v = lit_value(lit);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v < 0) {
          ++open;
          if (!first) first = &lit;
        }
      }
      if (!sat && open < best_open) best = first, best_open = open;
    }
    return best;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    const Literal* lit = pick();
    if (!lit) return true;
    const Literal choice = *lit;
    for (const Literal branch : {choice, ~choice}) {
      const std::size_t inner = trail_.size();
      set(branch);
      if (search()) return true;
      undo_to(inner);
    }
    undo_to(mark);
    return false;
  }
};

std::optional<PartialAssignment> random_walk(const CnfFormula& phi, std::uint64_t tries, Rng& rng) {
  const auto vars = phi.occurring_vars();
  const std::size_t steps = 3 * vars.size();
  const auto& cs = phi.clauses();
  std::vector<std::uint8_t> value(phi.num_vars() + 1, 0);
  std::vector<std::size_t> unsat;
  auto holds = [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return l.satisfied_by(value[l.var] != 0); });
  };
  for (std::uint64_t t = 0; t < tries; ++t) {
    for (auto v : vars) value[v] = rng.coin();
    for (std::size_t s = 0; s <= steps; ++s) {
      unsat.clear();
      for (std::size_t i = 0; i < cs.size(); ++i)
        if (!holds(cs[i])) unsat.push_back(i);
      if (unsat.empty()) {
        PartialAssignment model(phi.num_vars());
        for (std::uint32_t v = 1; v <= phi.num_vars(); ++v) model.set(v, value[v] != 0);
        return model;
      }
      if (s == steps) break;
      const Clause& c = cs[unsat[rng.below(unsat.size())]];
      const Literal& flip = c[rng.below(c.size())];
      value[flip.var] ^= 1U;
    }
  }
  return std::nullopt;
}

void check_bound(double failure_bound) {
  if (!(failure_bound > 0.0 && failure_bound < 1.0)) throw std::invalid_argument("failure bound must lie in (0, 1)");
}

DecisionOutcome complete(const CnfFormula& phi, double failure_bound) {
  DecisionOutcome out;
  out.failure_bound = failure_bound;
  if (phi.has_empty_clause()) return out;
  if (auto model = find_model(phi)) {
    out.satisfiable = true;
    out.witness = std::move(model);
  }
  return out;
}

}  // namespace

std::optional<PartialAssignment> find_model(const CnfFormula& phi) {
  if (phi.has_empty_clause()) return std::nullopt;
  Dpll solver(phi);
  if (!solver.solve()) return std::nullopt;
  return solver.model();
}

DecisionOutcome CompleteDecider::decide(const CnfFormula& phi, double failure_bound, Rng&) const {
  check_bound(failure_bound);
  return complete(phi, failure_bound);
}

DecisionOutcome RandomWalkDecider::decide(const CnfFormula& phi, double failure_bound, Rng& rng) const {
  check_bound(failure_bound);
  const auto n = static_cast<std::uint32_t>(phi.occurring_vars().size());
  const std::uint32_t k = phi.max_clause_length();
  if (n <= threshold_ || k <= 2 || phi.has_empty_clause()) return complete(phi, failure_bound);

  DecisionOutcome out;
  out.failure_bound = failure_bound;
  if (auto model = random_walk(phi, repetitions_for(n, k, failure_bound, threshold_), rng)) {
    if (!evaluate(phi, *model)) throw std::logic_error("random walk produced a non-model");
    out.satisfiable = true;
    out.witness = std::move(model);
  }
  return out;
}

double walk_success_probability(std::uint32_t n, std::uint32_t k) {
  if (k <= 2) return 1.0;
  const double base = static_cast<double>(k) / (2.0 * static_cast<double>(k - 1));
  return std::pow(base, static_cast<double>(n));
}

std::uint64_t repetitions_for_success(double success_probability, double failure_bound) {
  check_bound(failure_bound);
  if (!(success_probability > 0.0 && success_probability <= 1.0))
    throw std::invalid_argument("success probability must lie in (0, 1]");
  const double r = std::ceil(std::log(1.0 / failure_bound) / success_probability);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(r));
}

std::uint64_t repetitions_for(std::uint32_t n, std::uint32_t k, double failure_bound,
                              std::uint32_t exhaustive_threshold) {
  if (k < 2) throw std::invalid_argument("repetitions_for: k must be at least 2");
  if (n <= exhaustive_threshold || k == 2) return 1;
  return repetitions_for_success(walk_success_probability(n, k), failure_bound);
}

}  // namespace indep
