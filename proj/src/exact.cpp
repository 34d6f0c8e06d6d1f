#include "indep/exact.hpp"

#include "indep/errors.hpp"
#include "indep/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace indep::exact {

namespace {

void check_guard(const CnfFormula& phi, std::uint32_t max_vars) {
  if (max_vars > 63) throw std::invalid_argument("brute force supports at most 63 variables");
  if (phi.num_vars() > max_vars)
    throw GuardError("brute force refused: n=" + std::to_string(phi.num_vars()) + " exceeds guard " +
                     std::to_string(max_vars));
}

using IntClauses = std::vector<std::vector<int>>;

int var_of(int lit) { return lit < 0 ? -lit : lit; }

std::size_t distinct_vars(const IntClauses& cs) {
  std::vector<int> vs;
  for (const auto& c : cs)
    for (int l : c) vs.push_back(var_of(l));
  std::sort(vs.begin(), vs.end());
  return static_cast<std::size_t>(std::unique(vs.begin(), vs.end()) - vs.begin());
}

// Sets literal `lit` true. Returns false if an empty clause appears.
bool assign(IntClauses& cs, int lit) {
  IntClauses out;
  out.reserve(cs.size());
  for (auto& c : cs) {
    if (std::find(c.begin(), c.end(), lit) != c.end()) continue;
    auto it = std::find(c.begin(), c.end(), -lit);
    if (it != c.end()) {
      c.erase(it);
      if (c.empty()) return false;
    }
    out.push_back(std::move(c));
  }
  cs = std::move(out);
  return true;
}

// Counts assignments over exactly the variables occurring in the clauses.
class Counter {
 public:
  std::uint64_t nodes = 0;

  BigInt count(IntClauses cs) {
    ++nodes;
    if (cs.empty()) return 1;
    const std::size_t before = distinct_vars(cs);
    std::size_t forced = 0;
    for (;;) {
      auto unit = std::find_if(cs.begin(), cs.end(), [](const auto& c) { return c.size() == 1; });
      if (unit == cs.end()) break;
      const int lit = unit->front();
      ++forced;
      if (!assign(cs, lit)) return 0;
    }
    const std::size_t after = distinct_vars(cs);
    BigInt result = pow2(static_cast<std::uint32_t>(before - forced - after));
    if (cs.empty()) return result;
    for (auto& part : split(std::move(cs))) {
      result *= count_component(std::move(part));
      if (result == 0) break;
    }
    return result;
  }

 private:
  std::unordered_map<std::string, BigInt> memo_;

  static std::vector<IntClauses> split(IntClauses cs) {
    std::unordered_map<int, int> parent;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& c : cs)
      for (int l : c) parent.try_emplace(var_of(l), var_of(l));
    for (const auto& c : cs)
      for (std::size_t i = 1; i < c.size(); ++i) parent[find(var_of(c[i]))] = find(var_of(c[0]));
    std::unordered_map<int, std::size_t> slot;
    std::vector<IntClauses> parts;
    for (auto& c : cs) {
      const int root = find(var_of(c[0]));
      auto [it, fresh] = slot.try_emplace(root, parts.size());
      if (fresh) parts.emplace_back();
      parts[it->second].push_back(std::move(c));
    }
    return parts;
  }

  static std::string key_of(IntClauses& cs) {
    for (auto& c : cs) std::sort(c.begin(), c.end());
    std::sort(cs.begin(), cs.end());
    std::string key;
    for (const auto& c : cs) {
      for (int l : c) key.append(reinterpret_cast<const char*>(&l), sizeof l);
      key.push_back('\0');
      key.push_back('\0');
      key.push_back('\0');
      key.push_back('\0');
    }
    return key;
  }

  BigInt count_component(IntClauses cs) {
    std::string key = key_of(cs);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::unordered_map<int, int> degree;
    for (const auto& c : cs)
      for (int l : c) ++degree[var_of(l)];
    int best = 0, best_degree = -1;
    for (const auto& [v, d] : degree)
      if (d > best_degree || (d == best_degree && v < best)) best = v, best_degree = d;
    const std::size_t width = degree.size();

    BigInt total = 0;
    for (int lit : {-best, best}) {
      IntClauses branch = cs;
      if (!assign(branch, lit)) continue;
      const std::size_t rest = distinct_vars(branch);
      total += count(std::move(branch)) * pow2(static_cast<std::uint32_t>(width - 1 - rest));
    }
    memo_.emplace(std::move(key), total);
    return total;
  }
};

IntClauses to_ints(const CnfFormula& phi) {
  IntClauses cs;
  cs.reserve(phi.num_clauses());
  for (const auto& c : phi.clauses()) {
    std::vector<int> ints;
    for (const auto& lit : c) ints.push_back(lit.to_dimacs());
    cs.push_back(std::move(ints));
  }
  return cs;
}

}  // namespace

ExactCount brute_force_count(const CnfFormula& phi, std::uint32_t max_vars, int threads) {
  check_guard(phi, max_vars);
  const auto masks = kernels::to_masks(phi);
  return {BigInt(kernels::count_models_parallel(masks, threads)), std::uint64_t{1} << phi.num_vars()};
}

ExactCount brute_force_count_serial(const CnfFormula& phi, std::uint32_t max_vars) {
  check_guard(phi, max_vars);
  const auto masks = kernels::to_masks(phi);
  return {BigInt(kernels::count_models_serial(masks)), std::uint64_t{1} << phi.num_vars()};
}

ExactCount count_exact(const CnfFormula& phi) {
  if (phi.has_empty_clause()) return {0, 1};
  Counter counter;
  const auto occurring = static_cast<std::uint32_t>(phi.occurring_vars().size());
  BigInt value = counter.count(to_ints(phi)) * pow2(phi.num_vars() - occurring);
  return {std::move(value), counter.nodes};
}

ExactCount count_2sat_exact(const CnfFormula& phi) {
  if (phi.max_clause_length() > 2) throw std::invalid_argument("count_2sat_exact: clause longer than 2");
  return count_exact(phi);
}

ComponentSplit connected_components(const CnfFormula& phi) {
  std::vector<std::uint32_t> parent(phi.num_vars() + 1);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& c : phi.clauses())
    for (std::size_t i = 1; i < c.size(); ++i) parent[find(c[i].var)] = find(c[0].var);

  ComponentSplit out;
  std::unordered_map<std::uint32_t, std::size_t> slot;
  const auto& cs = phi.clauses();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].empty()) {
      out.parts.push_back({i});
      continue;
    }
    auto [it, fresh] = slot.try_emplace(find(cs[i][0].var), out.parts.size());
    if (fresh) out.parts.emplace_back();
    out.parts[it->second].push_back(i);
  }
  out.untouched_vars = phi.num_vars() - static_cast<std::uint32_t>(phi.occurring_vars().size());
  return out;
}

}  // namespace indep::exact
