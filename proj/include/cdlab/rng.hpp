#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cdlab::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Also used to derive independent substreams.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream for (master seed, index). Results never depend on which thread
// consumes a stream, only on how it was derived.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  return mix64(master + kGoldenGamma * (index + 1));
}

// Counter-based generator in the SplittableRandom family: state advances by a
// fixed gamma, outputs go through the mix finalizer.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return mix64(state_ += kGoldenGamma); }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1); never returns an endpoint (safe under log).
  double next_open_unit() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Unbiased integer in [0, bound). Lemire multiply-shift with rejection of
  // the short fraction, so every residue is exactly equally likely.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t cutoff = (0 - bound) % bound;
      while (lo < cutoff) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  Stream split(std::uint64_t index) const { return Stream(derive_stream(state_, index)); }

 private:
  std::uint64_t state_;
};

// Standard normal via Box-Muller on open-interval uniforms.
inline double next_gaussian(Stream& g) {
  const double u = g.next_open_unit();
  const double v = g.next_open_unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
}

// Uniform draw from the unit sphere in R^n.
std::vector<double> sample_unit_sphere(Stream& g, int n);

// Fisher-Yates shuffle of 0..n-1; uniform over all n! permutations.
std::vector<int> sample_permutation(Stream& g, int n);

}  // namespace cdlab::rng
