#include "indep/cnf.hpp"

#include "indep/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace indep {

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw std::invalid_argument("literal 0 is the clause terminator");
  return {static_cast<std::uint32_t>(lit < 0 ? -static_cast<long long>(lit) : lit), lit < 0};
}

void PartialAssignment::set(std::uint32_t var, bool value) {
  if (var == 0) throw std::invalid_argument("variable indices are 1-based");
  if (var >= values_.size()) values_.resize(var + 1, kUnset);
  values_[var] = value ? 1 : 0;
}

void PartialAssignment::unset(std::uint32_t var) {
  if (var < values_.size()) values_[var] = kUnset;
}

std::uint32_t PartialAssignment::assigned_count() const {
  return static_cast<std::uint32_t>(std::count_if(values_.begin(), values_.end(), [](std::int8_t v) { return v != kUnset; }));
}

std::vector<std::uint32_t> PartialAssignment::assigned_vars() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v < values_.size(); ++v)
    if (values_[v] != kUnset) out.push_back(v);
  return out;
}

namespace {

void validate(std::uint32_t num_vars, const std::vector<Clause>& clauses) {
  std::vector<std::uint32_t> seen(num_vars + 1, 0);
  std::uint32_t stamp = 0;
  for (const auto& c : clauses) {
    ++stamp;
    for (const auto& lit : c) {
      if (lit.var == 0 || lit.var > num_vars)
        throw std::invalid_argument("literal variable " + std::to_string(lit.var) + " outside [1, " +
                                    std::to_string(num_vars) + "]");
      if (seen[lit.var] == stamp) throw std::invalid_argument("clause repeats variable " + std::to_string(lit.var));
      seen[lit.var] = stamp;
    }
  }
}

std::uint32_t longest(const std::vector<Clause>& clauses) {
  std::size_t m = 0;
  for (const auto& c : clauses) m = std::max(m, c.size());
  return static_cast<std::uint32_t>(m);
}

}  // namespace

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  validate(num_vars_, clauses_);
  k_ = longest(clauses_);
}

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses, std::uint32_t k)
    : num_vars_(num_vars), k_(k), clauses_(std::move(clauses)) {
  validate(num_vars_, clauses_);
  if (longest(clauses_) > k_) throw std::invalid_argument("clause longer than k");
}

CnfFormula CnfFormula::from_ints(std::uint32_t num_vars, const std::vector<std::vector<int>>& clauses) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) {
    Clause clause;
    for (int lit : c) clause.push_back(Literal::from_dimacs(lit));
    out.push_back(std::move(clause));
  }
  return CnfFormula(num_vars, std::move(out));
}

std::uint32_t CnfFormula::max_clause_length() const { return longest(clauses_); }

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

std::vector<std::uint32_t> CnfFormula::occurring_vars() const {
  std::vector<char> hit(num_vars_ + 1, 0);
  for (const auto& c : clauses_)
    for (const auto& lit : c) hit[lit.var] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v <= num_vars_; ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

bool same_clause_set(const CnfFormula& a, const CnfFormula& b) {
  if (a.num_vars() != b.num_vars() || a.num_clauses() != b.num_clauses()) return false;
  auto canon = [](const CnfFormula& f) {
    std::vector<Clause> cs = f.clauses();
    for (auto& c : cs) std::sort(c.begin(), c.end());
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  return canon(a) == canon(b);
}

CnfFormula parse_dimacs(std::string_view text, ParseStats* stats, std::optional<std::uint32_t> k_override) {
  ParseStats local;
  ParseStats& st = stats ? *stats : local;
  st = ParseStats{};

  bool have_header = false;
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t line_no = 0;

  auto finish_clause = [&] {
    ++st.clauses_read;
    std::sort(current.begin(), current.end());
    Clause merged;
    bool tautology = false;
    for (const auto& lit : current) {
      if (!merged.empty() && merged.back().var == lit.var) {
        if (merged.back().negated != lit.negated) {
          tautology = true;
        } else {
          ++st.duplicate_literals_merged;
        }
        continue;
      }
      merged.push_back(lit);
    }
    if (tautology) {
      ++st.tautologies_dropped;
    } else {
      clauses.push_back(std::move(merged));
    }
    current.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line[0] == 'c') continue;
    if (line[0] == '%') break;
    if (line[0] == 'p') {
      if (have_header) throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
      std::istringstream in{std::string(line)};
      std::string p, fmt;
      long long n = -1, m = -1;
      if (!(in >> p >> fmt >> n >> m) || p != "p" || fmt != "cnf" || n < 0 || m < 0 || n > (1LL << 30))
        throw ParseError("line " + std::to_string(line_no) + ": malformed header, expected 'p cnf <n> <m>'");
      std::string extra;
      if (in >> extra) throw ParseError("line " + std::to_string(line_no) + ": trailing tokens in header");
      have_header = true;
      num_vars = static_cast<std::uint32_t>(n);
      st.header_clauses = static_cast<std::size_t>(m);
      continue;
    }
    if (!have_header) throw ParseError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");

    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      long long value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc() || ptr != line.data() + j)
        throw ParseError("line " + std::to_string(line_no) + ": bad token '" + std::string(line.substr(i, j - i)) + "'");
      if (value == 0) {
        finish_clause();
      } else {
        const long long var = value < 0 ? -value : value;
        if (var > num_vars)
          throw ParseError("line " + std::to_string(line_no) + ": literal " + std::to_string(value) +
                           " outside [1, " + std::to_string(num_vars) + "]");
        current.push_back({static_cast<std::uint32_t>(var), value < 0});
      }
      i = j;
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) finish_clause();  // last clause without terminating 0
  st.clause_count_mismatch = st.clauses_read != st.header_clauses;

  const std::uint32_t observed = longest(clauses);
  if (k_override) {
    if (*k_override < observed) throw ParseError("clause longer than requested k=" + std::to_string(*k_override));
    return CnfFormula(num_vars, std::move(clauses), *k_override);
  }
  return CnfFormula(num_vars, std::move(clauses));
}

std::string serialize_dimacs(const CnfFormula& phi) {
  std::string out = "p cnf " + std::to_string(phi.num_vars()) + " " + std::to_string(phi.num_clauses()) + "\n";
  for (const auto& c : phi.clauses()) {
    for (const auto& lit : c) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfFormula restrict(const CnfFormula& phi, const PartialAssignment& b) {
  std::vector<Clause> out;
  out.reserve(phi.num_clauses());
  for (const auto& c : phi.clauses()) {
    Clause rest;
    bool satisfied = false;
    for (const auto& lit : c) {
      const auto v = b.get(lit.var);
      if (!v) {
        rest.push_back(lit);
      } else if (lit.satisfied_by(*v)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(std::move(rest));
  }
  return CnfFormula(phi.num_vars(), std::move(out), phi.k());
}

CnfFormula restrict_compact(const CnfFormula& phi, const PartialAssignment& b) {
  const CnfFormula r = restrict(phi, b);
  std::vector<std::uint32_t> rename(phi.num_vars() + 1, 0);
  std::uint32_t next = 0;
  for (std::uint32_t v = 1; v <= phi.num_vars(); ++v)
    if (!b.is_set(v)) rename[v] = ++next;
  std::vector<Clause> out;
  out.reserve(r.num_clauses());
  for (const auto& c : r.clauses()) {
    Clause renamed;
    renamed.reserve(c.size());
    for (const auto& lit : c) renamed.push_back({rename[lit.var], lit.negated});
    out.push_back(std::move(renamed));
  }
  return CnfFormula(next, std::move(out));
}

bool evaluate(const CnfFormula& phi, const PartialAssignment& b) {
  bool all = true;
  for (const auto& c : phi.clauses()) {
    bool sat = false;
    for (const auto& lit : c) {
      const auto v = b.get(lit.var);
      if (!v) throw std::invalid_argument("variable " + std::to_string(lit.var) + " is unassigned");
      sat = sat || lit.satisfied_by(*v);
    }
    all = all && sat;
  }
  return all;
}

}  // namespace indep
