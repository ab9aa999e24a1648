#pragma once

#include <cstdint>
#include <random>

namespace sparsereg {

// 64-bit seed. Equal seeds reproduce equal streams bit-for-bit on a given
// platform; derived substreams make batch results independent of execution
// order.
struct Seed {
  std::uint64_t value = 0;
};

// Seed for the index-th substream of a master seed. Injective in the index,
// so distinct trials never share a stream.
Seed derive_seed(Seed master, std::uint64_t index);

// Deterministic random source: mt19937_64 with a splitmix64-expanded seed,
// uniform doubles from the top 53 bits, normals via Box-Muller. The
// algorithm choice is fixed; changing any of it invalidates recorded seeds.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();

  // Standard normal deviate.
  double normal();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sparsereg
