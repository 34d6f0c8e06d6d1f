#include "indep/cut.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indep {

namespace {

std::string describe(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(c[i].to_dimacs());
  }
  return s + ")";
}

std::size_t shortest_clause(const CnfFormula& residual, const PartialAssignment&) {
  const auto& cs = residual.clauses();
  std::size_t best = 0;
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (cs[i].size() < cs[best].size()) best = i;
  return best;
}

class CutSearch {
 public:
  CutSearch(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double delta, const CutOptions& options)
      : phi_(phi),
        psi_(psi),
        ell_(ell),
        options_(options),
        decider_(options.decider ? options.decider : &fallback_),
        rng_(options.seed),
        node_bound_(std::ldexp(delta, -static_cast<int>(phi.num_vars()))),
        order_(options.elimination_order.empty() ? frequency_order(phi) : options.elimination_order),
        max_width_(phi.max_clause_length()) {
    if (!(node_bound_ > 0.0)) node_bound_ = 1e-300;
    if (node_bound_ >= 1.0) node_bound_ = 0.5;
  }

  CutResult run() {
    PartialAssignment fixed(phi_.num_vars());
    aborted_ = !visit(phi_, fixed, 0, 0, 0);
    result_.kind = aborted_ ? CutKind::AtLeastEll : CutKind::Exact;
    result_.count = total_;
    return result_;
  }

 private:
  const CnfFormula& phi_;
  const StructSet& psi_;
  const BigInt& ell_;
  const CutOptions& options_;
  RandomWalkDecider fallback_;
  const Decider* decider_;
  Rng rng_;
  double node_bound_;
  std::vector<std::uint32_t> order_;
  std::uint32_t max_width_;
  BigInt total_ = 0;
  bool aborted_ = false;
  CutResult result_;

  bool satisfiable(const CnfFormula& residual) {
    if (residual.has_empty_clause()) return false;
    if (residual.num_clauses() == 0) return true;
    ++result_.decider_calls;
    return decider_->decide(residual, node_bound_, rng_).satisfiable;
  }

  void note(std::size_t depth, const std::string& pick, std::size_t factor) {
    ++result_.branch_nodes;
    if (options_.trace)
      options_.trace->push_back("depth=" + std::to_string(depth) + " pick=" + pick + " factor=" + std::to_string(factor));
  }

  // Returns false once the global counter has reached ell.
  bool visit(const CnfFormula& residual, PartialAssignment& fixed, std::uint32_t fixed_count, std::size_t next_struct,
             std::size_t depth) {
    if (!satisfiable(residual)) {
      ++result_.leaves;
      return true;
    }
    if (residual.num_clauses() == 0) {
      ++result_.leaves;
      total_ += pow2(phi_.num_vars() - fixed_count);
      return total_ < ell_;
    }

    if (options_.branching == Branching::StructGuided && next_struct < psi_.size()) {
      const Struct& sigma = psi_.structs[next_struct];
      note(depth, "struct#" + std::to_string(next_struct), sigma.satisfying.size());
      for (std::uint64_t pick : sigma.satisfying) {
        for (std::size_t i = 0; i < sigma.vars.size(); ++i) fixed.set(sigma.vars[i], ((pick >> i) & 1U) != 0);
        const bool go_on = descend(residual, fixed, sigma.vars, fixed_count, next_struct + 1, depth);
        for (auto v : sigma.vars) fixed.unset(v);
        if (!go_on) return false;
      }
      return true;
    }

    if (options_.branching == Branching::Binary) {
      std::vector<char> present(phi_.num_vars() + 1, 0);
      for (const auto& c : residual.clauses())
        for (const auto& lit : c) present[lit.var] = 1;
      auto it = std::find_if(order_.begin(), order_.end(), [&](std::uint32_t v) { return present[v] != 0; });
      if (it == order_.end()) throw std::logic_error("cut: elimination order misses a residual variable");
      const std::uint32_t v = *it;
      note(depth, "x" + std::to_string(v), 2);
      for (bool value : {false, true}) {
        fixed.set(v, value);
        const bool go_on = descend(residual, fixed, {v}, fixed_count, next_struct, depth);
        fixed.unset(v);
        if (!go_on) return false;
      }
      return true;
    }

    // Clause branching: PrunedClause throughout, StructGuided once psi is used up.
    if (options_.branching == Branching::StructGuided && options_.check_residual_width && !psi_.empty()) {
      for (const auto& c : residual.clauses())
        if (c.size() + 1 > max_width_) throw std::logic_error("cut: residual clause not shortened by psi");
    }
    const std::size_t chosen =
        options_.clause_chooser ? options_.clause_chooser(residual, fixed) : shortest_clause(residual, fixed);
    if (chosen >= residual.num_clauses()) throw std::out_of_range("cut: clause chooser returned a bad index");
    const Clause clause = residual.clauses()[chosen];
    std::vector<std::uint32_t> vars;
    for (const auto& lit : clause) vars.push_back(lit.var);
    std::sort(vars.begin(), vars.end());
    const std::uint64_t combos = std::uint64_t{1} << vars.size();
    note(depth, describe(clause), static_cast<std::size_t>(combos - 1));
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      // bit (size - 1 - i) holds vars[i], so masks enumerate in label order
      for (std::size_t i = 0; i < vars.size(); ++i) fixed.set(vars[i], ((mask >> (vars.size() - 1 - i)) & 1U) != 0);
      const bool sat = std::any_of(clause.begin(), clause.end(),
                                   [&](const Literal& l) { return l.satisfied_by(*fixed.get(l.var)); });
      bool go_on = true;
      if (sat) go_on = descend(residual, fixed, vars, fixed_count, next_struct, depth);
      for (auto v : vars) fixed.unset(v);
      if (!go_on) return false;
    }
    return true;
  }

  bool descend(const CnfFormula& residual, PartialAssignment& fixed, const std::vector<std::uint32_t>& newly,
               std::uint32_t fixed_count, std::size_t next_struct, std::size_t depth) {
    PartialAssignment step(phi_.num_vars());
    for (auto v : newly) step.set(v, *fixed.get(v));
    const CnfFormula child = restrict(residual, step);
    return visit(child, fixed, fixed_count + static_cast<std::uint32_t>(newly.size()), next_struct, depth + 1);
  }
};

}  // namespace

std::vector<std::uint32_t> frequency_order(const CnfFormula& phi) {
  std::vector<std::uint32_t> count(phi.num_vars() + 1, 0);
  for (const auto& c : phi.clauses())
    for (const auto& lit : c) ++count[lit.var];
  std::vector<std::uint32_t> order(phi.num_vars());
  for (std::uint32_t v = 1; v <= phi.num_vars(); ++v) order[v - 1] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return count[a] > count[b]; });
  return order;
}

CutResult cut(const CnfFormula& phi, const StructSet& psi, const BigInt& ell, double delta, const CutOptions& options) {
  if (ell < 1) throw std::invalid_argument("cut: ell must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("cut: delta must lie in (0, 1)");
  return CutSearch(phi, psi, ell, delta, options).run();
}

std::uint64_t ell_for_cut(const StructSet& psi, const BigInt& ell, std::uint32_t k) {
  if (ell < 1) throw std::invalid_argument("ell_for_cut: ell must be at least 1");
  BigInt product = 1;
  std::uint64_t m = 0;
  for (const auto& s : psi.structs) {
    if (product >= ell) return m;
    product *= s.l_sigma;
    ++m;
  }
  if (product >= ell) return m;
  if (k < 3) throw std::invalid_argument("ell_for_cut: k must be at least 3 once psi is exhausted");
  const std::uint64_t base = (std::uint64_t{1} << (k - 1)) - 1;
  if (product == 0) throw std::invalid_argument("ell_for_cut: a struct with no satisfying assignment");
  while (product < ell) {
    product *= base;
    ++m;
  }
  return m;
}

}  // namespace indep
