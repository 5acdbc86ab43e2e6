#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

#include "cone/errors.hpp"
#include "cone/geometry.hpp"

namespace cone {

/// Splittable pseudo-random stream: xoshiro256++ states derived from a
/// (seed, stream) pair through splitmix64. Replicate r of a run always
/// uses stream r, so every replicate is reproducible on its own,
/// independent of scheduling or evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t z = splitmix64(seed + 0x9E3779B97F4A7C15ull) +
                      0x9E3779B97F4A7C15ull * stream;
    for (std::uint64_t& w : s_) {
      z += 0x9E3779B97F4A7C15ull;
      w = splitmix64(z);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Exponential(1) via inversion; finite for every stream value.
  double exponential() { return -std::log1p(-next_double()); }

 private:
  static std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> s_{};
};

/// Uniform point in an axis-aligned box, one coordinate per dimension in
/// fixed order.
inline Point sample_point(RngStream& rng, const Box& box) {
  std::vector<double> coords(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i)
    coords[i] = rng.uniform(box.side(i).lo, box.side(i).hi);
  return Point(std::move(coords));
}

/// Poisson(lambda) count: product-of-uniforms for small means and
/// Hoermann's PTRS transformed rejection for large ones.
inline long sample_poisson(RngStream& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("Poisson mean must be finite and >= 0");
  if (lambda == 0.0) return 0;
  if (lambda < 10.0) {
    const double limit = std::exp(-lambda);
    long k = 0;
    double prod = rng.next_double();
    while (prod > limit) {
      ++k;
      prod *= rng.next_double();
    }
    return k;
  }
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_lambda = std::log(lambda);
  while (true) {
    double u = rng.next_double() - 0.5;
    const double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_lambda - lambda - std::lgamma(k + 1.0))
      return static_cast<long>(k);
  }
}

}  // namespace cone
