#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace brandgraph {

/// Deterministic random source used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and all derived draws (doubles, bounded integers, shuffles)
/// are implemented here rather than with std::*_distribution, whose
/// output is implementation-defined. Identical seeds therefore reproduce
/// identical streams on every platform and standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be > 0. Rejection sampling keeps
  /// the draw unbiased.
  std::uint64_t next_below(std::uint64_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace brandgraph
