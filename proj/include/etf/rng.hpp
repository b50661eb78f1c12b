#pragma once

#include <cstdint>

#include "etf/types.hpp"

namespace etf {

// splitmix64. Substreams are keyed by (seed, index) so that trial i draws the
// same values no matter which thread runs it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform01();  // (0, 1)
  int uniform_int(int bound);  // [0, bound)
  double gaussian();
  Complex complex_gaussian();

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

// Uniform on the unit sphere of C^k.
Vector random_unit_vector(SplitMix64& rng, int k);

// Uniform m-subset of {0,...,n-1}, sorted ascending.
IndexSet random_subset(SplitMix64& rng, int n, int m);

}  // namespace etf
