#include "fdrlim/rng.hpp"

#include "fdrlim/stats.hpp"

namespace fdrlim {

namespace {
std::mt19937_64 seeded_engine(std::uint64_t h) {
  std::uint64_t w0 = mix64(h);
  std::uint64_t w1 = mix64(w0);
  std::uint64_t w2 = mix64(w1);
  std::uint64_t w3 = mix64(w2);
  std::seed_seq seq{
      static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
      static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
      static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
      static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
  return std::mt19937_64(seq);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed) : eng_(seeded_engine(seed)) {}

RngStream RngStream::child(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = master;
  for (std::uint64_t idx : path) h = mix64(h ^ (idx + 0x9E3779B97F4A7C15ull));
  return RngStream(h);
}

double RngStream::normal() { return normal_quantile(uniform_open()); }

}  // namespace fdrlim
