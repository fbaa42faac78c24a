#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fdrlim {

// SplitMix64 finalizer, used to derive independent child streams from a
// master seed and a path of indices (alpha index, procedure index, trial
// index). The derivation is pure arithmetic, so a given (seed, path) pair
// yields the same stream no matter which thread runs it.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream child(std::uint64_t master, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe to feed into inverse CDFs.
  double uniform_open() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal();  // standard normal via inverse CDF

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fdrlim
