#pragma once

// Data-parallel inner loops. Each kernel has a serial twin that performs the
// identical computation on one thread; tests compare the two bit for bit.

#include "indep/cnf.hpp"
#include "indep/rng.hpp"

#include <cstdint>
#include <vector>

namespace indep::kernels {

/// Clauses as bitmasks over at most 64 variables (bit v-1 for variable v).
struct ClauseMasks {
  std::uint32_t num_vars = 0;
  std::vector<std::uint64_t> positive;
  std::vector<std::uint64_t> negative;
};

ClauseMasks to_masks(const CnfFormula& phi);

std::uint64_t count_models_serial(const ClauseMasks& cnf);
std::uint64_t count_models_parallel(const ClauseMasks& cnf, int threads = 0);

/// What one Monte Carlo draw needs: independent blocks whose joint values are
/// drawn from an explicit list, fair coins for the rest, and the formula to test.
struct SamplingPlan {
  struct Block {
    std::vector<std::uint32_t> vars;
    /// Admissible joint values; bit i is the value of vars[i].
    std::vector<std::uint64_t> assignments;
  };

  std::uint32_t num_vars = 0;
  std::vector<Block> blocks;
  std::vector<std::uint32_t> free_vars;
  /// Flattened formula: clause c spans literals[clause_begin[c] .. clause_begin[c+1]).
  std::vector<std::int32_t> literals;
  std::vector<std::uint32_t> clause_begin{0};
};

SamplingPlan make_plan(const CnfFormula& phi, std::vector<SamplingPlan::Block> blocks);

/// Writes one draw into `values` (indexed by variable, size num_vars + 1).
void draw(const SamplingPlan& plan, Rng& rng, std::vector<std::uint8_t>& values);
bool satisfies(const SamplingPlan& plan, const std::vector<std::uint8_t>& values);

/// Samples per RNG stream. Chunk c always uses Rng(seed).split(c), so hit
/// counts do not depend on the thread count.
inline constexpr std::uint64_t kChunk = 4096;

std::uint64_t count_hits_serial(const SamplingPlan& plan, std::uint64_t samples, std::uint64_t seed);
std::uint64_t count_hits_parallel(const SamplingPlan& plan, std::uint64_t samples, std::uint64_t seed,
                                  int threads = 0);

}  // namespace indep::kernels
