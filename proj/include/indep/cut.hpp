#pragma once

#include "indep/bigint.hpp"
#include "indep/cnf.hpp"
#include "indep/decider.hpp"
#include "indep/structs.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace indep {

enum class CutKind { Exact, AtLeastEll };

struct CutResult {
  CutKind kind = CutKind::Exact;
  /// The exact count, or the counter value at which exploration aborted (>= ell).
  BigInt count = 0;
  std::uint64_t branch_nodes = 0;
  std::uint64_t decider_calls = 0;
  std::uint64_t leaves = 0;
};

enum class Branching {
  Binary,        // one variable per level, 0/1 children
  PrunedClause,  // a residual clause per node, one child per satisfying assignment
  StructGuided,  // the structs of psi first, then residual clauses
};

struct CutOptions {
  Branching branching = Branching::StructGuided;
  /// Falls back to a RandomWalkDecider when null.
  const Decider* decider = nullptr;
  std::uint64_t seed = 0;
  /// Binary only. Empty: most frequent variable first (ties by index).
  std::vector<std::uint32_t> elimination_order;
  /// Picks the clause to branch on (index into residual.clauses()); given the
  /// residual and the variables fixed on the path. Default: shortest, then lowest index.
  std::function<std::size_t(const CnfFormula&, const PartialAssignment&)> clause_chooser;
  /// Receives "depth=<d> pick=<what> factor=<f>" for every branch node.
  std::vector<std::string>* trace = nullptr;
  /// StructGuided: once psi is used up, require residual clauses of length <= k - 1.
  bool check_residual_width = false;
};

/// Depth-first search of the elimination tree. Adds 2^(free variables) at
/// every clause-free satisfiable node and aborts once the total reaches ell.
/// Each satisfiability check gets failure bound delta / 2^n.
CutResult cut(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double delta,
              const CutOptions& options = {});

/// Variables by descending occurrence count, ties by index.
std::vector<std::uint32_t> frequency_order(const CnfFormula& phi);

/// Number of structs (and further (k-1)-clauses once psi is used up) needed
/// before the product of branch factors reaches ell.
std::uint64_t ell_for_cut(const StructSet& psi, const BigInt& ell, std::uint32_t k);

}  // namespace indep
