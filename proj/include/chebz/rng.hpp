#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace chebz {

// Seeded generator with explicit per-trial stream derivation. Draws are built
// from raw 64-bit engine output so sequences do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for (seed, index); used so that trial i sees the same
  // numbers whether trials run sequentially or in parallel.
  static Rng derived(std::uint64_t seed, std::uint64_t index);

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  std::size_t index(std::size_t n);      // [0, n)
  std::vector<double> unit_vector(std::size_t dim);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace chebz
