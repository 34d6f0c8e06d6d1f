#pragma once

#include "indep/cnf.hpp"
#include "indep/rng.hpp"

#include <cstdint>
#include <optional>

namespace indep {

struct DecisionOutcome {
  bool satisfiable = false;
  /// Present iff satisfiable; binds every variable 1..n and satisfies the formula.
  std::optional<PartialAssignment> witness;
  double failure_bound = 0.0;
};

/// One-sided k-SAT decision oracle: SAT verdicts always carry a checked
/// witness, UNSAT verdicts are wrong with probability at most failure_bound.
class Decider {
 public:
  virtual ~Decider() = default;
  virtual DecisionOutcome decide(const CnfFormula& phi, double failure_bound, Rng& rng) const = 0;
};

/// Complete backtracking search with unit propagation; never wrong.
class CompleteDecider final : public Decider {
 public:
  DecisionOutcome decide(const CnfFormula& phi, double failure_bound, Rng& rng) const override;
};

/// Schoening's random walk, amplified to the requested failure bound.
/// Falls back to complete search when at most `exhaustive_threshold`
/// variables occur in the formula.
class RandomWalkDecider final : public Decider {
 public:
  explicit RandomWalkDecider(std::uint32_t exhaustive_threshold = 22) : threshold_(exhaustive_threshold) {}
  DecisionOutcome decide(const CnfFormula& phi, double failure_bound, Rng& rng) const override;
  std::uint32_t exhaustive_threshold() const { return threshold_; }

 private:
  std::uint32_t threshold_;
};

/// Per-trial success probability of one walk of 3n steps on an n-variable
/// satisfiable k-CNF: (k / (2(k-1)))^n.
double walk_success_probability(std::uint32_t n, std::uint32_t k);

/// ceil(ln(1/failure_bound) / success_probability), at least 1.
std::uint64_t repetitions_for_success(double success_probability, double failure_bound);

/// Independent walks needed so that a satisfiable formula is missed with
/// probability at most failure_bound; 1 when complete search applies.
std::uint64_t repetitions_for(std::uint32_t n, std::uint32_t k, double failure_bound,
                              std::uint32_t exhaustive_threshold = 22);

/// Complete satisfiability search; the witness binds all of 1..n.
std::optional<PartialAssignment> find_model(const CnfFormula& phi);

}  // namespace indep
