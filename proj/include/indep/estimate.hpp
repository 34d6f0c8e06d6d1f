#pragma once

#include "indep/bigint.hpp"

#include <cstdint>

namespace indep {

struct WorkCounters {
  std::uint64_t decider_calls = 0;
  std::uint64_t branch_nodes = 0;
  std::uint64_t samples = 0;
  std::uint64_t recursive_calls = 0;
  std::uint64_t exact_nodes = 0;

  WorkCounters& operator+=(const WorkCounters& o) {
    decider_calls += o.decider_calls;
    branch_nodes += o.branch_nodes;
    samples += o.samples;
    recursive_calls += o.recursive_calls;
    exact_nodes += o.exact_nodes;
    return *this;
  }
};

/// Result of a counting run. For Monte Carlo output, value = hits / samples * |U|.
struct Estimate {
  Rational value = 0;
  bool exact = false;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  /// Sample size was cut by the budget; the (epsilon, delta) guarantee does not hold.
  bool under_sampled = false;
  WorkCounters work;

  static Estimate exact_value(const BigInt& count, double epsilon, double delta, std::uint64_t seed) {
    Estimate e;
    e.value = Rational(count);
    e.exact = true;
    e.epsilon = epsilon;
    e.delta = delta;
    e.seed = seed;
    return e;
  }

  /// (1 - eps) * truth <= value <= (1 + eps) * truth.
  bool within(const BigInt& truth, double eps) const;
};

}  // namespace indep
