#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace orbitface {

/// Deterministic random source.  Every randomized routine takes one of these;
/// there is no global state.  Sub-streams are derived from the master seed and
/// a task label so that unrelated routines do not perturb each other's draws.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Stable sub-stream: FNV-1a mix of the parent seed and a label.
  Rng fork(const std::string& label) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(seed_);
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return Rng(h, true);
  }

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1).
  double uniform() {
    return double(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return std::size_t(uniform() * double(n)) % n;
  }

  /// Standard normal via mt19937_64-backed distribution-free Box-Muller.
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

private:
  Rng(std::uint64_t seed, bool) : seed_(seed), engine_(seed) {}

  std::uint64_t seed_ = 0;
  std::mt19937_64 engine_;
};

/// Default master seed for every CLI entry point and suite.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEEull;

} // namespace orbitface
