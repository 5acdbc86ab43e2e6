#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cone/ktransform.hpp"
#include "cone/random_measures.hpp"

namespace cone {

/// A bounded set of finite measures: support inside a window's region,
/// weights inside its band, and an atom count between min_atoms and
/// max_atoms. Its indicator is the basic certified integrand for
/// correlation measures.
struct BoundedSetSpec {
  Window window;
  std::size_t max_atoms = 0;
  std::size_t min_atoms = 0;

  /// 1_A as a cone function with local-support and bounded-support
  /// certificates derived from the spec itself.
  ConeFunction indicator() const;

  bool contains(const FiniteDiscreteMeasure& xi) const;
};

/// Value of an integral against the Lebesgue-Poisson measure, with the
/// Monte-Carlo part of its error when high-order terms were estimated
/// rather than integrated.
struct LpIntegral {
  double value = 0.0;
  double std_error = 0.0;
  int terms_used = 0;
};

/// Integral of G against the Lebesgue-Poisson measure of nu x sigma:
/// G(0) plus the series over n of (1/n!) times the integral of G over
/// n-atom measures. Terms up to n = 2 use tensorized adaptive
/// quadrature; higher terms use plain Monte Carlo with mc_points
/// samples (internally seeded, deterministic) and propagate their
/// standard error. For bounded-support G the series terminates at the
/// certified atom count; otherwise it stops when terms decay below
/// 1e-10 relative, and SeriesNotTruncated is thrown if n_max is reached
/// first.
LpIntegral lp_integral(const ConeFunction& G, const LevyIntensity& nu,
                       const BaseMeasure& sigma, int n_max = 20,
                       long mc_points = 100000,
                       std::uint64_t mc_seed = 0x51a7e0b1c2d3e4f5ull);

/// Monte-Carlo mean of (KG)(eta) over draws of the window sampler; the
/// K-sum sees only the certificate-relevant part of each draw.
McEstimate correlation_measure_mc(const ConeFunction& G,
                                  const PoissonWindowSampler& law, long n,
                                  std::uint64_t seed,
                                  std::size_t cap = kEnumerationCap);

/// One correlation-function ratio: estimated correlation measure over
/// the Lebesgue-Poisson reference, which is 1 for Poisson laws.
struct CorrelationRatio {
  std::string name;
  McEstimate measure;
  LpIntegral reference;
  double ratio = 0.0;
  double z = 0.0;
};

/// Ratio check for indicators of the given bounded sets under the
/// sampler's Poisson law.
std::vector<CorrelationRatio> correlation_function_poisson_check(
    const std::vector<BoundedSetSpec>& sets, const PoissonWindowSampler& law,
    long n, std::uint64_t seed);

}  // namespace cone
