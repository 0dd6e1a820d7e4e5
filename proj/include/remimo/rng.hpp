#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "remimo/constants.hpp"

namespace remimo {

// Monte-Carlo results must be byte-reproducible for a given master seed,
// independent of platform and of how trials are scheduled across threads.
// Standard-library distributions make no cross-implementation guarantees, so
// the generator and the uniform/normal transforms are fixed here explicitly:
// splitmix64 for bits, 53-bit mantissa scaling for uniforms, Box-Muller for
// normals. Substreams are derived by hashing (master seed, indices) so every
// trial owns an independent stream regardless of execution order.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Order-sensitive combine of a seed with a stream index.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2));
  std::uint64_t out = splitmix64_next(s);
  return out ^ b;
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  /// Stream for substream (a, b) of a master seed, e.g. (point index, trial index).
  static RandomStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return RandomStream(mix_seed(mix_seed(master, a), b));
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform on [0, 1) with full 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    // 1 - u in (0, 1] keeps the log argument away from zero.
    double r = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
    double t = 2.0 * constants::pi * uniform01();
    cache_ = r * std::sin(t);
    has_cache_ = true;
    return r * std::cos(t);
  }

  /// Circularly-symmetric complex normal, unit power: E|z|^2 = 1.
  std::complex<double> cnormal() {
    double re = normal();
    double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

 private:
  std::uint64_t state_;
  bool has_cache_ = false;
  double cache_ = 0.0;
};

} // namespace remimo
