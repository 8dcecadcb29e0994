#pragma once

#include <cstdint>
#include <random>

namespace narsrl {

/// splitmix64 step; used to derive independent seed streams from one master
/// seed so that env, agent, and fallback randomness never share a sequence.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded generator with portable bounded draws. std::mt19937_64 output is
/// specified by the standard; the mappings below avoid the
/// implementation-defined std::*_distribution classes so traces are stable
/// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n). n must be positive.
  int uniform_index(int n) {
    const auto wide = static_cast<unsigned __int128>(next_u64()) *
                      static_cast<unsigned __int128>(n);
    return static_cast<int>(wide >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace narsrl
