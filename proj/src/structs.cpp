#include "indep/structs.hpp"

#include "indep/errors.hpp"
#include "indep/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace indep {

namespace {

std::vector<std::uint32_t> vars_of(const std::vector<Clause>& clauses) {
  std::vector<std::uint32_t> vs;
  for (const auto& c : clauses)
    for (const auto& lit : c) vs.push_back(lit.var);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Clauses as masks over the positions of `vars`.
struct LocalMasks {
  std::vector<std::uint64_t> pos, neg, support;
};

LocalMasks local_masks(const std::vector<Clause>& clauses, const std::vector<std::uint32_t>& vars) {
  LocalMasks m;
  for (const auto& c : clauses) {
    std::uint64_t p = 0, q = 0;
    for (const auto& lit : c) {
      const auto at = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), lit.var) - vars.begin());
      (lit.negated ? q : p) |= std::uint64_t{1} << at;
    }
    m.pos.push_back(p);
    m.neg.push_back(q);
    m.support.push_back(p | q);
  }
  return m;
}

bool satisfies_all(const LocalMasks& m, std::uint64_t a) {
  for (std::size_t c = 0; c < m.pos.size(); ++c)
    if (((a & m.pos[c]) | (~a & m.neg[c])) == 0) return false;
  return true;
}

// A clause is falsified by a partial assignment only when all of its
// variables are assigned and all of its literals are false.
bool falsifies_none(const LocalMasks& m, std::uint64_t assigned, std::uint64_t a) {
  for (std::size_t c = 0; c < m.pos.size(); ++c) {
    if ((m.support[c] & ~assigned) != 0) continue;
    if (((a & m.pos[c]) | (~a & m.neg[c])) == 0) return false;
  }
  return true;
}

std::uint64_t closed_mask(const std::vector<std::uint32_t>& vars, const std::vector<std::uint32_t>& closed) {
  std::uint64_t mask = 0;
  for (auto v : closed) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v)
      throw std::invalid_argument("closed variable " + std::to_string(v) + " does not occur in the struct");
    mask |= std::uint64_t{1} << (it - vars.begin());
  }
  return mask;
}

// Spreads the low bits of `compact` onto the set bits of `mask`.
std::uint64_t deposit(std::uint64_t compact, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask != 0; bit <<= 1) {
    const std::uint64_t low = mask & (~mask + 1);
    if (compact & bit) out |= low;
    mask &= mask - 1;
  }
  return out;
}

void enumerate_dfs(const LocalMasks& m, const std::vector<std::vector<std::size_t>>& closing, std::size_t depth,
                   std::size_t width, std::uint64_t a, std::vector<std::uint64_t>& out) {
  if (depth == width) {
    if (out.size() >= kMaxStructAssignments) throw GuardError("struct has too many satisfying assignments to list");
    out.push_back(a);
    return;
  }
  for (std::uint64_t bit : {std::uint64_t{0}, std::uint64_t{1}}) {
    const std::uint64_t next = a | (bit << depth);
    bool ok = true;
    for (auto c : closing[depth])
      if (((next & m.pos[c]) | (~next & m.neg[c])) == 0) ok = false;
    if (ok) enumerate_dfs(m, closing, depth + 1, width, next, out);
  }
}

}  // namespace

StructStats struct_stats(const std::vector<Clause>& clauses, const std::vector<std::uint32_t>& closed_vars) {
  const auto vars = vars_of(clauses);
  if (vars.size() > kStructCap)
    throw GuardError("struct_stats: " + std::to_string(vars.size()) + " variables exceed the cap of " +
                     std::to_string(kStructCap));
  const auto m = local_masks(clauses, vars);
  const std::uint64_t cmask = closed_mask(vars, closed_vars);
  StructStats s;
  s.n_sigma = static_cast<std::uint32_t>(vars.size());
  s.f_sigma = static_cast<std::uint32_t>(closed_vars.size());
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s.n_sigma); ++a) s.l_sigma += satisfies_all(m, a);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s.f_sigma); ++a)
    s.w_sigma += falsifies_none(m, cmask, deposit(a, cmask));
  return s;
}

StructStats struct_stats(const Struct& sigma) { return struct_stats(sigma.clauses, sigma.closed_vars); }

Struct make_struct(std::vector<Clause> clauses, std::vector<std::uint32_t> closed_vars) {
  Struct s;
  s.vars = vars_of(clauses);
  if (s.vars.size() > 64) throw GuardError("struct wider than 64 variables");
  std::sort(closed_vars.begin(), closed_vars.end());
  closed_vars.erase(std::unique(closed_vars.begin(), closed_vars.end()), closed_vars.end());
  const std::uint64_t cmask = closed_mask(s.vars, closed_vars);
  s.clauses = std::move(clauses);
  s.closed_vars = std::move(closed_vars);
  s.n_sigma = static_cast<std::uint32_t>(s.vars.size());
  s.f_sigma = static_cast<std::uint32_t>(s.closed_vars.size());
  const auto m = local_masks(s.clauses, s.vars);

  if (s.n_sigma <= kStructCap) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << s.n_sigma); ++a)
      if (satisfies_all(m, a)) s.satisfying.push_back(a);
  } else {
    std::vector<std::vector<std::size_t>> closing(s.n_sigma);
    for (std::size_t c = 0; c < m.support.size(); ++c) {
      if (m.support[c] == 0) continue;
      closing[63 - static_cast<std::size_t>(__builtin_clzll(m.support[c]))].push_back(c);
    }
    if (std::any_of(m.support.begin(), m.support.end(), [](std::uint64_t x) { return x == 0; })) {
      // an empty clause: nothing satisfies the struct
    } else {
      enumerate_dfs(m, closing, 0, s.n_sigma, 0, s.satisfying);
    }
  }
  s.l_sigma = s.satisfying.size();

  if (s.fully_closed()) {
    s.closed_admissible = s.satisfying;
  } else {
    if (s.f_sigma > 24) throw GuardError("too many closed variables in a partially closed struct");
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << s.f_sigma); ++a)
      if (falsifies_none(m, cmask, deposit(a, cmask))) s.closed_admissible.push_back(a);
  }
  s.w_sigma = s.closed_admissible.size();
  return s;
}

BigInt StructSet::product_l() const {
  BigInt p = 1;
  for (const auto& s : structs) p *= s.l_sigma;
  return p;
}

BigInt StructSet::product_w() const {
  BigInt p = 1;
  for (const auto& s : structs) p *= s.w_sigma;
  return p;
}

std::uint32_t StructSet::total_vars() const {
  std::uint32_t t = 0;
  for (const auto& s : structs) t += s.n_sigma;
  return t;
}

std::uint32_t StructSet::total_closed() const {
  std::uint32_t t = 0;
  for (const auto& s : structs) t += s.f_sigma;
  return t;
}

// ---------------------------------------------------------------------------
// Library

namespace {

constexpr std::string_view kBuiltinLibrary = R"(# non-closed struct shapes, clause width 3
k 3
pattern 1 2 3 0 closed 3
pattern 1 2 3 0 1 4 5 0 closed 1
pattern 1 2 3 0 1 2 4 0 closed 1
pattern 1 2 3 0 1 4 5 0 2 6 7 0 closed 1 2
# clause width 4
k 4
pattern 1 2 3 4 0 closed 4
pattern 1 2 3 4 0 1 5 6 7 0 closed 1
pattern 1 2 3 4 0 1 5 6 7 0 2 8 9 10 0 closed 1 2
)";

class ShapeMatcher {
 public:
  ShapeMatcher(const StructPattern& pattern, const std::vector<Clause>& clauses)
      : pattern_(pattern), clauses_(clauses), used_(clauses.size(), 0) {
    std::uint32_t top = 0;
    for (const auto& c : pattern.clauses)
      for (const auto& lit : c) top = std::max(top, lit.var);
    to_target_.assign(top + 1, 0);
    flip_.assign(top + 1, -1);
  }

  std::optional<std::vector<std::uint32_t>> run() {
    if (pattern_.clauses.size() != clauses_.size()) return std::nullopt;
    if (vars_of(pattern_.clauses).size() != vars_of(clauses_).size()) return std::nullopt;
    if (!match(0)) return std::nullopt;
    std::vector<std::uint32_t> closed;
    for (auto v : pattern_.closed) closed.push_back(to_target_[v]);
    std::sort(closed.begin(), closed.end());
    return closed;
  }

 private:
  const StructPattern& pattern_;
  const std::vector<Clause>& clauses_;
  std::vector<char> used_;
  std::vector<std::uint32_t> to_target_;
  std::vector<int> flip_;
  std::unordered_map<std::uint32_t, std::uint32_t> to_pattern_;

  bool match(std::size_t i) {
    if (i == pattern_.clauses.size()) return true;
    const Clause& pc = pattern_.clauses[i];
    for (std::size_t j = 0; j < clauses_.size(); ++j) {
      if (used_[j] || clauses_[j].size() != pc.size()) continue;
      used_[j] = 1;
      std::vector<std::size_t> perm(pc.size());
      for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = p;
      do {
        std::vector<std::uint32_t> bound;
        if (bind(pc, clauses_[j], perm, bound) && match(i + 1)) return true;
        for (auto pv : bound) {
          to_pattern_.erase(to_target_[pv]);
          to_target_[pv] = 0;
          flip_[pv] = -1;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      used_[j] = 0;
    }
    return false;
  }

  bool bind(const Clause& pc, const Clause& tc, const std::vector<std::size_t>& perm, std::vector<std::uint32_t>& bound) {
    for (std::size_t p = 0; p < pc.size(); ++p) {
      const Literal& pl = pc[p];
      const Literal& tl = tc[perm[p]];
      const int flip = pl.negated != tl.negated ? 1 : 0;
      if (to_target_[pl.var] == 0) {
        if (to_pattern_.count(tl.var)) return false;
        to_target_[pl.var] = tl.var;
        to_pattern_[tl.var] = pl.var;
        flip_[pl.var] = flip;
        bound.push_back(pl.var);
      } else if (to_target_[pl.var] != tl.var || flip_[pl.var] != flip) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

StructLibrary StructLibrary::builtin() { return parse(kBuiltinLibrary); }

StructLibrary StructLibrary::parse(std::string_view text) {
  StructLibrary lib;
  std::istringstream in{std::string(text)};
  std::string line;
  std::uint32_t k = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    const std::string where = "library line " + std::to_string(line_no) + ": ";
    if (head == "k") {
      long long width = 0;
      if (!(words >> width) || width < 1 || width > 64) throw ParseError(where + "expected 'k <width>'");
      k = static_cast<std::uint32_t>(width);
    } else if (head == "pattern") {
      if (k == 0) throw ParseError(where + "pattern before any 'k' directive");
      StructPattern pattern;
      Clause current;
      std::string tok;
      bool in_closed = false;
      while (words >> tok) {
        if (tok == "closed") {
          if (!current.empty()) throw ParseError(where + "clause not terminated by 0");
          in_closed = true;
          continue;
        }
        long long value = 0;
        try {
          std::size_t used = 0;
          value = std::stoll(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ParseError(where + "bad token '" + tok + "'");
        }
        if (in_closed) {
          if (value <= 0) throw ParseError(where + "closed variables must be positive");
          pattern.closed.push_back(static_cast<std::uint32_t>(value));
        } else if (value == 0) {
          pattern.clauses.push_back(std::move(current));
          current.clear();
        } else {
          current.push_back(Literal::from_dimacs(static_cast<int>(value)));
        }
      }
      if (!in_closed) throw ParseError(where + "missing 'closed' list");
      try {
        lib.add(k, std::move(pattern));
      } catch (const std::invalid_argument& e) {
        throw ParseError(where + e.what());
      }
    } else {
      throw ParseError(where + "unknown directive '" + head + "'");
    }
  }
  return lib;
}

std::string StructLibrary::to_text() const {
  std::string out;
  for (const auto& [k, patterns] : by_k_) {
    out += "k " + std::to_string(k) + "\n";
    for (const auto& p : patterns) {
      out += "pattern";
      for (const auto& c : p.clauses) {
        for (const auto& lit : c) out += " " + std::to_string(lit.to_dimacs());
        out += " 0";
      }
      out += " closed";
      for (auto v : p.closed) out += " " + std::to_string(v);
      out += "\n";
    }
  }
  return out;
}

void StructLibrary::add(std::uint32_t k, StructPattern pattern) {
  if (pattern.clauses.empty()) throw std::invalid_argument("pattern without clauses");
  const auto vars = vars_of(pattern.clauses);
  for (const auto& c : pattern.clauses) {
    if (c.empty() || c.size() > k) throw std::invalid_argument("pattern clause length outside [1, k]");
    if (vars_of({c}).size() != c.size()) throw std::invalid_argument("pattern clause repeats a variable");
  }
  std::sort(pattern.closed.begin(), pattern.closed.end());
  pattern.closed.erase(std::unique(pattern.closed.begin(), pattern.closed.end()), pattern.closed.end());
  for (auto v : pattern.closed)
    if (!std::binary_search(vars.begin(), vars.end(), v))
      throw std::invalid_argument("closed variable " + std::to_string(v) + " not in pattern");
  for (const auto& c : pattern.clauses) {
    const bool covered = std::any_of(c.begin(), c.end(), [&](const Literal& l) {
      return std::binary_search(pattern.closed.begin(), pattern.closed.end(), l.var);
    });
    if (!covered) throw std::invalid_argument("every pattern clause needs a closed variable");
  }
  by_k_[k].push_back(std::move(pattern));
}

const std::vector<StructPattern>& StructLibrary::patterns_for(std::uint32_t k) const {
  static const std::vector<StructPattern> none;
  auto it = by_k_.find(k);
  return it == by_k_.end() ? none : it->second;
}

std::size_t StructLibrary::size() const {
  std::size_t n = 0;
  for (const auto& [k, ps] : by_k_) n += ps.size();
  return n;
}

std::vector<std::uint32_t> match_library(const std::vector<Clause>& clauses, const StructLibrary& lib, std::uint32_t k) {
  for (const auto& pattern : lib.patterns_for(k))
    if (auto closed = ShapeMatcher(pattern, clauses).run()) return *closed;
  return vars_of(clauses);
}

// ---------------------------------------------------------------------------
// Growing struct sets

StructSet grow_structs(const CnfFormula& phi, const StructLibrary& lib, std::uint32_t k) {
  const auto& cs = phi.clauses();
  std::vector<int> owner(phi.num_vars() + 1, -1);
  std::vector<char> closed(phi.num_vars() + 1, 0);
  std::vector<std::optional<Struct>> pool;
  std::vector<std::vector<std::size_t>> members;

  auto uncovered = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (std::none_of(cs[i].begin(), cs[i].end(), [&](const Literal& l) { return closed[l.var] != 0; })) return i;
    return std::nullopt;
  };

  std::size_t rounds = 0;
  while (auto next = uncovered()) {
    if (++rounds > cs.size()) throw std::logic_error("grow_structs: merge loop did not terminate");
    const Clause& c = cs[*next];
    if (c.empty()) throw std::invalid_argument("grow_structs: formula contains the empty clause");

    std::vector<int> touched;
    for (const auto& lit : c)
      if (owner[lit.var] >= 0) touched.push_back(owner[lit.var]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<std::size_t> ids{*next};
    for (int t : touched) ids.insert(ids.end(), members[t].begin(), members[t].end());
    std::sort(ids.begin(), ids.end());
    std::vector<Clause> merged;
    for (auto i : ids) merged.push_back(cs[i]);

    auto closed_vars = vars_of(merged).size() > kStructCap ? vars_of(merged) : match_library(merged, lib, k);
    Struct sigma = make_struct(std::move(merged), std::move(closed_vars));

    for (int t : touched) {
      for (auto v : pool[t]->vars) owner[v] = -1, closed[v] = 0;
      pool[t].reset();
      members[t].clear();
    }
    const int id = static_cast<int>(pool.size());
    for (auto v : sigma.vars) owner[v] = id;
    for (auto v : sigma.closed_vars) closed[v] = 1;
    pool.push_back(std::move(sigma));
    members.push_back(std::move(ids));
  }

  StructSet out;
  for (auto& s : pool)
    if (s) out.structs.push_back(std::move(*s));
  return out;
}

StructSet independent_clauses(const CnfFormula& phi) {
  std::vector<char> taken(phi.num_vars() + 1, 0);
  StructSet out;
  for (const auto& c : phi.clauses()) {
    if (c.empty()) continue;
    if (std::any_of(c.begin(), c.end(), [&](const Literal& l) { return taken[l.var] != 0; })) continue;
    for (const auto& lit : c) taken[lit.var] = 1;
    std::vector<std::uint32_t> all;
    for (const auto& lit : c) all.push_back(lit.var);
    out.structs.push_back(make_struct({c}, std::move(all)));
  }
  return out;
}

bool is_maximal(const CnfFormula& phi, const StructSet& psi) {
  std::vector<char> closed(phi.num_vars() + 1, 0);
  for (const auto& s : psi.structs)
    for (auto v : s.closed_vars) closed[v] = 1;
  return std::all_of(phi.clauses().begin(), phi.clauses().end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return closed[l.var] != 0; });
  });
}

bool is_pairwise_disjoint(const StructSet& psi) {
  std::vector<std::uint32_t> all;
  for (const auto& s : psi.structs) all.insert(all.end(), s.vars.begin(), s.vars.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

PartialAssignment closed_branch(const StructSet& psi, std::uint32_t num_vars, std::uint64_t index) {
  PartialAssignment b(num_vars);
  for (const auto& s : psi.structs) {
    if (s.w_sigma == 0) throw std::out_of_range("closed_branch: a struct admits no assignment");
    const std::uint64_t pick = s.closed_admissible[index % s.w_sigma];
    index /= s.w_sigma;
    for (std::size_t i = 0; i < s.closed_vars.size(); ++i) b.set(s.closed_vars[i], ((pick >> i) & 1U) != 0);
  }
  if (index != 0) throw std::out_of_range("closed_branch: index beyond the branch count");
  return b;
}

// ---------------------------------------------------------------------------
// Red

bool structs_pay_off(const StructSet& psi, std::uint32_t n, double alpha_k, double alpha_k_minus_1) {
  const double log_prev = std::log(alpha_k_minus_1);
  double lhs = static_cast<double>(n) * log_prev;
  for (const auto& s : psi.structs) {
    if (s.w_sigma == 0) return false;
    lhs += std::log(static_cast<double>(s.w_sigma)) - static_cast<double>(s.f_sigma) * log_prev;
  }
  return lhs >= static_cast<double>(n) * std::log(alpha_k);
}

Estimate count_over_branches(const CnfFormula& phi, const StructSet& psi, std::uint32_t k, double eps, double delta,
                             const RecursiveCounter& counter, const RedOptions& options) {
  const BigInt total_big = psi.product_w();
  if (total_big > BigInt(std::uint64_t{1} << 40)) throw GuardError("too many closed-variable branches to enumerate");
  const auto total = total_big.convert_to<std::uint64_t>();
  const double sub_delta = std::ldexp(delta, -static_cast<int>(phi.num_vars()));

  Estimate sum;
  sum.exact = true;
  sum.epsilon = eps;
  sum.delta = delta;
  sum.seed = options.seed;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

#pragma omp parallel num_threads(std::max(1, options.threads))
  {
    Estimate local;
    local.exact = true;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        const auto index = static_cast<std::uint64_t>(i);
        const CnfFormula sub = restrict_compact(phi, closed_branch(psi, phi.num_vars(), index));
        if (sub.num_clauses() > 0 && sub.max_clause_length() + 1 > k)
          throw std::logic_error("branch residual is not a (k-1)-CNF");
        Estimate e = counter(sub, eps, sub_delta, derive_seed(options.seed, index));
        local.value += e.value;
        local.exact = local.exact && e.exact;
        local.samples += e.samples;
        local.hits += e.hits;
        local.under_sampled = local.under_sampled || e.under_sampled;
        local.work += e.work;
        local.work.recursive_calls += 1;
      } catch (...) {
        failed = true;
#pragma omp critical(indep_red_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(indep_red_sum)
    {
      sum.value += local.value;
      sum.exact = sum.exact && local.exact;
      sum.samples += local.samples;
      sum.hits += local.hits;
      sum.under_sampled = sum.under_sampled || local.under_sampled;
      sum.work += local.work;
    }
  }
  if (failure) std::rethrow_exception(failure);
  return sum;
}

RedOutcome red_structs(const CnfFormula& phi, const ParamSet& params, double eps, double delta,
                       const RecursiveCounter& counter, const RedOptions& options) {
  if (params.k < 3) throw std::invalid_argument("red_structs needs k >= 3");
  if (phi.num_clauses() == 0) return {StructSet{}};
  if (phi.has_empty_clause()) return {Estimate::exact_value(0, eps, delta, options.seed)};
  const StructLibrary fallback = options.library ? StructLibrary{} : StructLibrary::builtin();
  const StructLibrary& lib = options.library ? *options.library : fallback;

  StructSet psi = grow_structs(phi, lib, params.k);
  if (structs_pay_off(psi, phi.num_vars(), params.alpha(params.k), params.alpha(params.k - 1))) return {std::move(psi)};
  return {count_over_branches(phi, psi, params.k, eps, delta, counter, options)};
}

RedOutcome red_clauses(const CnfFormula& phi, std::uint32_t m_hat, double eps, double delta,
                       const RecursiveCounter& counter, const RedOptions& options) {
  if (phi.has_empty_clause()) return {Estimate::exact_value(0, eps, delta, options.seed)};
  StructSet psi = independent_clauses(phi);
  if (psi.size() >= m_hat) return {std::move(psi)};
  const std::uint32_t k = std::max<std::uint32_t>(phi.max_clause_length(), 1);
  return {count_over_branches(phi, psi, k, eps, delta, counter, options)};
}

}  // namespace indep
