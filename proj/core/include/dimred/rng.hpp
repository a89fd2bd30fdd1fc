#pragma once

#include <cstdint>

namespace dimred {

// Counter-based pseudo-random stream.
//
// Every random quantity in the library is a pure function of
// (seed, stream, counter): value = finalize(key + (counter+1) * GAMMA) with
// key derived from seed and stream the same way.  finalize() is the
// splitmix64 output permutation, GAMMA its golden-ratio increment.  Because
// draws are indexed rather than sequential, results never depend on
// evaluation order or on how work is split across threads.
//
// Stream ids used by the library (callers should stay above 0x100):
//   0  Monte-Carlo C-estimation draws
//   1  summary-plot draws
//   2  ridge-fit training draws
//   3  ridge-fit test draws
//   4  gradient-audit points
//   0x1000 + r  bootstrap replicate r
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(finalize(seed + (stream + 1) * kGamma)) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return finalize(key_ + (counter + 1) * kGamma);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform on [-1, 1).
  double uniform_sym(std::uint64_t counter) const {
    return 2.0 * uniform01(counter) - 1.0;
  }

  // Uniform index in [0, n).
  std::uint64_t uniform_index(std::uint64_t counter, std::uint64_t n) const {
    std::uint64_t i = static_cast<std::uint64_t>(uniform01(counter) * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
};

namespace streams {
inline constexpr std::uint64_t kMonteCarlo = 0;
inline constexpr std::uint64_t kSummary = 1;
inline constexpr std::uint64_t kRidgeFitTrain = 2;
inline constexpr std::uint64_t kRidgeFitTest = 3;
inline constexpr std::uint64_t kGradientAudit = 4;
inline constexpr std::uint64_t kBootstrapBase = 0x1000;
}  // namespace streams

}  // namespace dimred
