#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace indep {

/// SplitMix64 finalizer applied to (seed, stream); used to derive child seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seedable, splittable generator. Child streams are derived from the seed
/// alone, so a stream's output never depends on how much the parent consumed.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(derive_seed(seed, 0)) {}

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream + 1)); }

  std::uint64_t operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform in [0, bound); bound > 0. Rejection sampling, portable across standard libraries.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace indep
