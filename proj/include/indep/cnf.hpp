#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace indep {

/// A variable (1-based) with a sign.
struct Literal {
  std::uint32_t var = 1;
  bool negated = false;

  static Literal from_dimacs(int lit);
  int to_dimacs() const { return negated ? -static_cast<int>(var) : static_cast<int>(var); }

  /// True if this literal is satisfied when `var` takes `value`.
  bool satisfied_by(bool value) const { return value != negated; }
  Literal operator~() const { return {var, !negated}; }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Literals over pairwise distinct variables. The empty clause is unsatisfiable.
using Clause = std::vector<Literal>;

/// Partial map from variables to truth values.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::uint32_t num_vars) : values_(num_vars + 1, kUnset) {}

  void set(std::uint32_t var, bool value);
  void unset(std::uint32_t var);
  std::optional<bool> get(std::uint32_t var) const {
    if (var >= values_.size() || values_[var] == kUnset) return std::nullopt;
    return values_[var] == 1;
  }
  bool is_set(std::uint32_t var) const { return get(var).has_value(); }
  /// Largest variable index this assignment can hold.
  std::uint32_t capacity() const { return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1); }
  std::uint32_t assigned_count() const;
  /// Variables with a value, ascending.
  std::vector<std::uint32_t> assigned_vars() const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> values_;
};

/// A CNF over variables 1..num_vars with every clause of length <= k.
class CnfFormula {
 public:
  CnfFormula() = default;
  /// k defaults to the longest clause.
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses, std::uint32_t k);

  /// Convenience constructor from DIMACS-style signed integers.
  static CnfFormula from_ints(std::uint32_t num_vars, const std::vector<std::vector<int>>& clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::uint32_t k() const { return k_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::uint32_t max_clause_length() const;
  bool has_empty_clause() const;
  /// Variables that occur in some clause, ascending.
  std::vector<std::uint32_t> occurring_vars() const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::uint32_t num_vars_ = 0;
  std::uint32_t k_ = 0;
  std::vector<Clause> clauses_;
};

/// Clause-set equality: same variable count and same multiset of clauses,
/// ignoring clause order and literal order.
bool same_clause_set(const CnfFormula& a, const CnfFormula& b);

struct ParseStats {
  std::size_t tautologies_dropped = 0;
  std::size_t duplicate_literals_merged = 0;
  bool clause_count_mismatch = false;
  std::size_t header_clauses = 0;
  std::size_t clauses_read = 0;
};

/// Parses DIMACS CNF. Throws ParseError on a malformed header or an
/// out-of-range literal; a clause-count mismatch is only recorded in `stats`.
CnfFormula parse_dimacs(std::string_view text, ParseStats* stats = nullptr,
                        std::optional<std::uint32_t> k_override = std::nullopt);

std::string serialize_dimacs(const CnfFormula& phi);

/// Fixes the variables bound in `b`: satisfied clauses disappear, false
/// literals are stripped. Variable indices are kept.
CnfFormula restrict(const CnfFormula& phi, const PartialAssignment& b);

/// Like restrict, then renumbers the still-unbound variables of 1..n densely,
/// so the result counts over exactly the n - |b| free variables.
CnfFormula restrict_compact(const CnfFormula& phi, const PartialAssignment& b);

/// True iff every clause has a true literal. Throws std::invalid_argument if
/// a variable occurring in phi is unbound.
bool evaluate(const CnfFormula& phi, const PartialAssignment& b);

}  // namespace indep
