#pragma once

#include "indep/bigint.hpp"
#include "indep/cnf.hpp"
#include "indep/estimate.hpp"
#include "indep/params.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace indep {

/// Widest struct whose statistics are computed by plain enumeration.
inline constexpr std::uint32_t kStructCap = 16;
/// Largest satisfying-assignment list kept for an over-cap struct.
inline constexpr std::uint64_t kMaxStructAssignments = std::uint64_t{1} << 22;

/// A small subformula with its closed variables and cached statistics.
struct Struct {
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> vars;         // ascending
  std::vector<std::uint32_t> closed_vars;  // ascending subset of vars
  std::uint32_t n_sigma = 0;
  std::uint64_t l_sigma = 0;  // satisfying assignments over vars
  std::uint64_t w_sigma = 0;  // assignments to closed_vars falsifying no clause
  std::uint32_t f_sigma = 0;
  /// Satisfying assignments; bit i is the value of vars[i].
  std::vector<std::uint64_t> satisfying;
  /// Non-falsifying assignments to the closed variables; bit i is closed_vars[i].
  std::vector<std::uint64_t> closed_admissible;

  bool fully_closed() const { return f_sigma == n_sigma; }
};

struct StructStats {
  std::uint32_t n_sigma = 0;
  std::uint64_t l_sigma = 0;
  std::uint64_t w_sigma = 0;
  std::uint32_t f_sigma = 0;

  friend bool operator==(const StructStats&, const StructStats&) = default;
};

/// Statistics by exhaustive enumeration. Throws GuardError above kStructCap variables.
StructStats struct_stats(const std::vector<Clause>& clauses, const std::vector<std::uint32_t>& closed_vars);
StructStats struct_stats(const Struct& sigma);

/// Builds a struct and caches its statistics and assignment lists. Closed
/// variables outside the struct are rejected.
Struct make_struct(std::vector<Clause> clauses, std::vector<std::uint32_t> closed_vars);

/// Pairwise variable-disjoint structs.
struct StructSet {
  std::vector<Struct> structs;

  std::size_t size() const { return structs.size(); }
  bool empty() const { return structs.empty(); }
  /// Product of L_sigma.
  BigInt product_l() const;
  /// Product of w_sigma: the number of closed-variable branches.
  BigInt product_w() const;
  std::uint32_t total_vars() const;
  std::uint32_t total_closed() const;
};

/// A struct shape with designated closed variables. Literal signs matter only
/// through agreement: a match may flip a variable's polarity consistently
/// across all clauses it occurs in.
struct StructPattern {
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> closed;
};

/// Non-closed struct shapes keyed by clause width k.
class StructLibrary {
 public:
  /// Shapes for k = 3 (single clause, two clauses sharing one variable, two
  /// clauses sharing two, three-clause star) and k = 4 (single, pair, star).
  static StructLibrary builtin();

  /// Text format, one directive per line, '#' comments:
  ///   k <width>
  ///   pattern <lits> 0 [<lits> 0 ...] closed <vars>
  static StructLibrary parse(std::string_view text);
  std::string to_text() const;

  /// Throws std::invalid_argument unless every clause of the pattern contains
  /// a closed variable and all closed variables occur in it.
  void add(std::uint32_t k, StructPattern pattern);
  const std::vector<StructPattern>& patterns_for(std::uint32_t k) const;
  std::size_t size() const;

 private:
  std::map<std::uint32_t, std::vector<StructPattern>> by_k_;
};

/// Closed variables for a candidate struct: the designated variables of the
/// first matching pattern for width k, or every variable when none matches.
std::vector<std::uint32_t> match_library(const std::vector<Clause>& clauses, const StructLibrary& lib,
                                         std::uint32_t k);

/// The greedy merge loop: while some clause contains no closed variable,
/// merge it with every struct it touches. Clauses are scanned in input order.
/// The result is maximal: every clause contains a closed variable.
StructSet grow_structs(const CnfFormula& phi, const StructLibrary& lib, std::uint32_t k);

/// Greedy maximal set of pairwise variable-disjoint clauses, each a fully closed struct.
StructSet independent_clauses(const CnfFormula& phi);

/// True if every clause of phi contains a closed variable of some struct.
bool is_maximal(const CnfFormula& phi, const StructSet& psi);
bool is_pairwise_disjoint(const StructSet& psi);

/// Assignment number `index` (mixed radix over product_w()) to all closed variables.
PartialAssignment closed_branch(const StructSet& psi, std::uint32_t num_vars, std::uint64_t index);

/// Counts a (k-1)-CNF; receives the sub-formula, epsilon, per-call delta and a seed.
using RecursiveCounter = std::function<Estimate(const CnfFormula&, double, double, std::uint64_t)>;

struct RedOutcome {
  std::variant<StructSet, Estimate> result;

  bool has_structs() const { return std::holds_alternative<StructSet>(result); }
  const StructSet& structs() const { return std::get<StructSet>(result); }
  const Estimate& estimate() const { return std::get<Estimate>(result); }
};

struct RedOptions {
  const StructLibrary* library = nullptr;  // builtin when null
  std::uint64_t seed = 0;
  int threads = 1;
};

/// alpha_{k-1}^n * prod(w / alpha_{k-1}^f) >= alpha_k^n, in log space.
bool structs_pay_off(const StructSet& psi, std::uint32_t n, double alpha_k, double alpha_k_minus_1);

/// Sums recursive counts over all closed-variable branches. Every branch
/// residual must have clauses of length <= k - 1 (std::logic_error otherwise).
Estimate count_over_branches(const CnfFormula& phi, const StructSet& psi, std::uint32_t k, double eps, double delta,
                             const RecursiveCounter& counter, const RedOptions& options);

/// Struct reduction: grows a maximal struct set, keeps it if it pays off
/// against recursion, otherwise resolves the count over the closed-variable
/// branches with failure budget delta / 2^n per call.
RedOutcome red_structs(const CnfFormula& phi, const ParamSet& params, double eps, double delta,
                       const RecursiveCounter& counter, const RedOptions& options = {});

/// Clause reduction: keeps a greedy maximal independent clause set of size
/// >= m_hat, otherwise counts over its satisfying assignments.
RedOutcome red_clauses(const CnfFormula& phi, std::uint32_t m_hat, double eps, double delta,
                       const RecursiveCounter& counter, const RedOptions& options = {});

}  // namespace indep
