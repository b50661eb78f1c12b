#include "etf/rng.hpp"

#include "etf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace etf {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
  // 53-bit mantissa, offset by half a step: never exactly 0 or 1.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

int SplitMix64::uniform_int(int bound) {
  if (bound <= 0) throw BadConfig("uniform_int needs a positive bound");
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return static_cast<int>(x % b);
  }
}

double SplitMix64::gaussian() { return complex_gaussian().real(); }

Complex SplitMix64::complex_gaussian() {
  // Box-Muller; both coordinates are independent standard normals.
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(mix(seed) ^ (index + 0x9e3779b97f4a7c15ULL)));
}

Vector random_unit_vector(SplitMix64& rng, int k) {
  if (k < 1) throw BadConfig("unit vector needs a positive dimension");
  Vector v(k);
  for (;;) {
    for (int i = 0; i < k; ++i) v(i) = rng.complex_gaussian();
    const double norm = v.norm();
    if (norm > 1e-150) return v / norm;
  }
}

IndexSet random_subset(SplitMix64& rng, int n, int m) {
  if (m < 0 || m > n) throw BadConfig("subset size outside 0..n");
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  IndexSet out(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    out[static_cast<size_t>(i)] = pool[static_cast<size_t>(i)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace etf
