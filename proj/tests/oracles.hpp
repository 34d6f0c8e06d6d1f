#pragma once

// Reference implementations that share no code with the library: plain
// integer clauses, naive enumeration, std::mt19937 for instance generation.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using IntClauses = std::vector<std::vector<int>>;

inline bool satisfied(const IntClauses& cs, std::uint64_t bits) {
  for (const auto& c : cs) {
    bool any = false;
    for (int lit : c) {
      const bool value = (bits >> (std::abs(lit) - 1)) & 1U;
      if ((lit > 0) == value) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

/// Models of cs over variables 1..n.
inline std::uint64_t count(const IntClauses& cs, unsigned n) {
  std::uint64_t total = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) total += satisfied(cs, b) ? 1 : 0;
  return total;
}

/// m clauses of width k over distinct variables, fair signs.
inline IntClauses random_kcnf(unsigned n, unsigned m, unsigned k, std::uint32_t seed) {
  std::mt19937 gen(seed);
  IntClauses out;
  for (unsigned i = 0; i < m; ++i) {
    std::set<int> vars;
    while (vars.size() < k) vars.insert(static_cast<int>(gen() % n) + 1);
    std::vector<int> c;
    for (int v : vars) c.push_back(gen() & 1U ? -v : v);
    out.push_back(c);
  }
  return out;
}

/// Clauses of mixed widths 1..k.
inline IntClauses random_mixed(unsigned n, unsigned m, unsigned k, std::uint32_t seed) {
  std::mt19937 gen(seed);
  IntClauses out;
  for (unsigned i = 0; i < m; ++i) {
    const unsigned width = 1 + gen() % k;
    std::set<int> vars;
    while (vars.size() < width) vars.insert(static_cast<int>(gen() % n) + 1);
    std::vector<int> c;
    for (int v : vars) c.push_back(gen() & 1U ? -v : v);
    out.push_back(c);
  }
  return out;
}

}  // namespace oracle
