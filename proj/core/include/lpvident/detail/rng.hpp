#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lpvident::detail {

/// One splitmix64 step; mixes the state and returns the next word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Decorrelated seed for sub-stream `index` with role `purpose` of a master
/// seed. Identical inputs give identical streams on every platform.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t purpose) {
  std::uint64_t s = seed;
  (void)splitmix64(s);
  s ^= 0x6a09e667f3bcc909ULL * (index + 1);
  (void)splitmix64(s);
  s ^= 0xbb67ae8584caa73bULL * (purpose + 1);
  return splitmix64(s);
}

/// Deterministic double-precision draws on top of std::mt19937_64. The
/// engine's output sequence is fixed by the standard and the conversions
/// below avoid the implementation-defined std distributions, so streams
/// reproduce across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal via Box-Muller; two words per draw, no cached spare.
  double normal() {
    double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  /// -1 or +1, equiprobable.
  double binary_sign() { return (gen_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lpvident::detail
