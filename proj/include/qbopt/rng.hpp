#pragma once

#include <cstdint>

namespace qbopt {

/// SplitMix64 generator. Small, fast, and counter-friendly: every trial of a
/// Monte Carlo ensemble gets its own stream derived from (seed, trial index),
/// so results do not depend on scheduling or worker count.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [lo, hi) with 53 random mantissa bits.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and up to two
/// stream indices (e.g. sweep point and trial). Pure function of its inputs.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (a + 1)) ^ (0xbf58476d1ce4e5b9ULL * (b + 1)));
  return mix.next();
}

}  // namespace qbopt
