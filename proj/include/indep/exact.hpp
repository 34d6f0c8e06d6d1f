#pragma once

#include "indep/bigint.hpp"
#include "indep/cnf.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace indep::exact {

struct ExactCount {
  BigInt value;
  std::uint64_t nodes_visited = 0;
};

inline constexpr std::uint32_t kBruteForceGuard = 28;

/// Enumerates all 2^n assignments (OpenMP-parallel). Throws GuardError if
/// n > max_vars; max_vars itself may not exceed 63.
ExactCount brute_force_count(const CnfFormula& phi, std::uint32_t max_vars = kBruteForceGuard, int threads = 0);

/// Same enumeration on one thread; kept as the reference for the parallel kernel.
ExactCount brute_force_count_serial(const CnfFormula& phi, std::uint32_t max_vars = kBruteForceGuard);

/// Exact count for any clause width: component splitting, unit propagation,
/// branching on a most frequent variable, and memoization of residual
/// components.
ExactCount count_exact(const CnfFormula& phi);

/// count_exact restricted to 2-CNF. Throws std::invalid_argument on a longer clause.
ExactCount count_2sat_exact(const CnfFormula& phi);

struct ComponentSplit {
  /// Clause indices per part; two clauses share a part iff a chain of shared
  /// variables connects them.
  std::vector<std::vector<std::size_t>> parts;
  /// Variables of 1..n that occur in no clause.
  std::uint32_t untouched_vars = 0;
};

ComponentSplit connected_components(const CnfFormula& phi);

}  // namespace indep::exact
