#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "cone/intensity.hpp"
#include "cone/measure.hpp"
#include "cone/stats.hpp"
#include "cone/test_function.hpp"

namespace cone {

/// Shared knobs for the samplers: either a window for Poisson sampling
/// or a truncation tolerance for the gamma measure, plus seeding.
struct SamplerConfig {
  std::optional<Window> window;
  double truncation_tol = 1e-6;
  std::uint64_t seed = 0;
  long replicates = 1;
};

/// Draws the window restriction of a Poisson random measure with
/// intensity nu x sigma: atom count Poisson(sigma(Lambda) nu([a,b])),
/// positions i.i.d. uniform on Lambda under sigma, weights i.i.d. from
/// the normalized restriction of nu to [a, b].
///
/// A window of zero mean count is degenerate, not an error: sampling
/// then always yields the zero measure.
class PoissonWindowSampler {
 public:
  PoissonWindowSampler(LevyIntensity nu, BaseMeasure sigma, Window w);

  FiniteDiscreteMeasure sample(RngStream& rng) const;

  const LevyIntensity& nu() const { return nu_; }
  const BaseMeasure& sigma() const { return sigma_; }
  const Window& window() const { return window_; }
  Interval band() const { return Interval(window_.a, window_.b); }

  double nu_mass() const { return nu_mass_; }
  double sigma_mass() const { return sigma_mass_; }
  /// sigma(Lambda) nu([a, b]), the Poisson mean of the atom count.
  double mean_count() const { return mean_count_; }
  /// sigma(Lambda) * integral of s over the band, the mean total mass.
  double mean_mass() const;
  bool degenerate() const { return mean_count_ == 0.0; }

 private:
  LevyIntensity nu_;
  BaseMeasure sigma_;
  Window window_;
  double nu_mass_;
  double sigma_mass_;
  double mean_count_;
  std::optional<WeightSampler> weights_;
};

/// Draws from the gamma random measure with intensity theta, realized
/// as the Poisson sampler on the weight window [epsilon, B]: epsilon is
/// chosen so the expected discarded small-atom mass theta sigma(Lambda)
/// epsilon stays below tol, and B so the discarded upper-tail count
/// stays below tol/10.
class GammaConeSampler {
 public:
  GammaConeSampler(double theta, BaseMeasure sigma, Box lambda, double tol);

  FiniteDiscreteMeasure sample(RngStream& rng) const {
    return window_sampler_ ? window_sampler_->sample(rng)
                           : FiniteDiscreteMeasure{};
  }

  double epsilon() const { return epsilon_; }
  double upper_cut() const { return upper_cut_; }
  double tol() const { return tol_; }
  double theta() const { return theta_; }
  bool degenerate() const { return !window_sampler_; }

  /// The realized window sampler; present unless sigma(Lambda) = 0.
  const PoissonWindowSampler& window_sampler() const;

 private:
  double theta_;
  double tol_;
  double epsilon_ = 0.0;
  double upper_cut_ = 0.0;
  std::optional<PoissonWindowSampler> window_sampler_;
};

/// Monte-Carlo Laplace functional E[exp(-<eta, f>)] under the window
/// sampler; replicate r uses stream r of the seed.
McEstimate laplace_transform_mc(const TestFunction& f,
                                const PoissonWindowSampler& law, long n,
                                std::uint64_t seed);

/// exp(integral of (e^{-s f(x)} - 1) nu(ds) sigma(dx)) by nested
/// adaptive quadrature (tolerance 1e-8); the weight integral runs over
/// `band` when given, else over the full support of nu.
double laplace_transform_exact(const TestFunction& f, const LevyIntensity& nu,
                               const BaseMeasure& sigma,
                               std::optional<Interval> band = std::nullopt);

/// Closed form exp(-theta * integral of ln(1 + f) d sigma) for the
/// gamma intensity; a cross-check for laplace_transform_exact.
double laplace_gamma_closed_form(const TestFunction& f, double theta,
                                 const BaseMeasure& sigma);

/// One catalog functional F(eta, s, x) for the add-one-atom identity.
using MeckeFunctional =
    std::function<double(const FiniteDiscreteMeasure&, double, const Point&)>;

/// Verifies E[sum_x s_x F(eta, s_x, x)] =
/// E[integral of s F(eta + s delta_x, s, x) nu(ds) sigma(dx)] under the
/// window sampler's law, with the right side's integral over exactly
/// the window used for sampling (the windowed law is itself Poisson).
/// Both sides are evaluated on the same draws.
PairedCheck mecke_check(const MeckeFunctional& F,
                        const PoissonWindowSampler& law, long n,
                        std::uint64_t seed);

/// n-th moment of eta(Lambda) from the composition formula
/// sum_k sigma(Lambda)^k / k! sum over compositions of n into k parts of
/// the multinomial coefficient times the product of weight moments.
double moment_exact(int n, const Box& lambda, const LevyIntensity& nu,
                    const BaseMeasure& sigma,
                    std::optional<Interval> band = std::nullopt);

/// Monte-Carlo moment of eta(Lambda) under the window sampler.
McEstimate moment_mc(int n, const Box& lambda, const PoissonWindowSampler& law,
                     long n_rep, std::uint64_t seed);

/// Empirical law of the atom count against Poisson(mean_count).
struct CountLawReport {
  double reference = 0.0;
  McEstimate mean;
  double variance = 0.0;
  double variance_se = 0.0;
  double z_mean = 0.0;
  double z_variance = 0.0;
  double chi_square = 0.0;
  double chi_square_dof = 0.0;
  double p_value = 1.0;
};

CountLawReport count_law_check(const PoissonWindowSampler& law, long n,
                               std::uint64_t seed);

/// Compares mean total masses of gamma draws at tol and tol/10; their
/// difference is bounded by the discarded-mass budget plus noise.
struct TruncationCheck {
  McEstimate coarse;
  McEstimate fine;
  double budget = 0.0;
  double epsilon_coarse = 0.0;
  double epsilon_fine = 0.0;
};

TruncationCheck gamma_truncation_check(double theta, const BaseMeasure& sigma,
                                       const Box& lambda, double tol, long n,
                                       std::uint64_t seed);

}  // namespace cone
