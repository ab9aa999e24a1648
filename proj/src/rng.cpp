#include "sparsereg/rng.hpp"

#include <cmath>
#include <numbers>

namespace sparsereg {

namespace {

std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index) {
  std::uint64_t state = master.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  std::uint64_t a = splitmix64_step(state);
  std::uint64_t b = splitmix64_step(state);
  return Seed{a ^ (b << 32 | b >> 32)};
}

Rng::Rng(Seed seed) {
  std::uint64_t state = seed.value;
  engine_.seed(splitmix64_step(state));
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  // Lemire multiply-shift with rejection; unbiased and stream-deterministic.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    const std::uint64_t t = (0 - bound) % bound;
    while (lo < t) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace sparsereg
