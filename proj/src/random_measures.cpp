#include "cone/random_measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cone/quadrature.hpp"

namespace cone {

namespace {

constexpr QuadratureOptions kLaplaceQuad{1e-8, 1e-8, 5000};

/// Weight band for the right-hand integrals of identities checked under
/// a window sampler's law: exactly the sampling band.
Interval law_band(const PoissonWindowSampler& law) { return law.band(); }

}  // namespace

PoissonWindowSampler::PoissonWindowSampler(LevyIntensity nu, BaseMeasure sigma,
                                           Window w)
    : nu_(std::move(nu)), sigma_(std::move(sigma)), window_(std::move(w)) {
  sigma_mass_ = sigma_.mass(window_.lambda);
  nu_mass_ = nu_.mass(window_.a, window_.b);
  mean_count_ = sigma_mass_ * nu_mass_;
  if (mean_count_ > 0.0)
    weights_.emplace(nu_, window_.a, window_.b);
}

double PoissonWindowSampler::mean_mass() const {
  return sigma_mass_ * nu_.moment(1, window_.a, window_.b);
}

FiniteDiscreteMeasure PoissonWindowSampler::sample(RngStream& rng) const {
  if (degenerate()) return FiniteDiscreteMeasure{};
  const long count = sample_poisson(rng, mean_count_);
  std::vector<WeightedAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Point x = sigma_.sample(rng, window_.lambda);
    bool clash = true;
    while (clash) {
      clash = false;
      for (const WeightedAtom& a : atoms)
        if (a.position == x) {
          x = sigma_.sample(rng, window_.lambda);
          clash = true;
          break;
        }
    }
    atoms.push_back(WeightedAtom{weights_->sample(rng), std::move(x)});
  }
  return FiniteDiscreteMeasure(std::move(atoms));
}

GammaConeSampler::GammaConeSampler(double theta, BaseMeasure sigma, Box lambda,
                                   double tol)
    : theta_(theta), tol_(tol) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw InvalidArgument("gamma sampler needs theta > 0");
  if (!(tol > 0.0)) throw InvalidArgument("gamma sampler needs tol > 0");
  const double rate = theta * sigma.mass(lambda);
  if (rate == 0.0) return;

  epsilon_ = std::min(tol / rate, 0.5);

  auto tail_count = [&](double b) {
    return rate * integrate_to_inf([](double s) { return std::exp(-s) / s; }, b);
  };
  double b = 1.0;
  while (tail_count(b) >= tol / 10.0) b *= 2.0;
  upper_cut_ = b;

  window_sampler_.emplace(LevyIntensity::gamma(theta), std::move(sigma),
                          Window(std::move(lambda), epsilon_, upper_cut_));
}

const PoissonWindowSampler& GammaConeSampler::window_sampler() const {
  if (!window_sampler_)
    throw InvalidArgument("degenerate gamma sampler has no window sampler");
  return *window_sampler_;
}

McEstimate laplace_transform_mc(const TestFunction& f,
                                const PoissonWindowSampler& law, long n,
                                std::uint64_t seed) {
  RunningStat stat;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    stat.add(std::exp(-eta.pairing(f)));
  }
  return stat.estimate();
}

double laplace_transform_exact(const TestFunction& f, const LevyIntensity& nu,
                               const BaseMeasure& sigma,
                               std::optional<Interval> band) {
  const Box region = intersect(sigma.box(), f.support());
  if (region.empty() || sigma.density() == 0.0) return 1.0;
  const double s_lo = band ? std::max(band->lo, nu.support_lo()) : nu.support_lo();
  const double s_hi = band ? std::min(band->hi, nu.support_hi()) : nu.support_hi();
  if (!(s_lo < s_hi)) return 1.0;
  const std::vector<double> s_breaks = nu.breakpoints();

  auto inner = [&](const Point& x) {
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    auto integrand = [&](double s) {
      return std::expm1(-s * fx) * nu.density(s);
    };
    if (std::isinf(s_hi))
      return integrate_to_inf(integrand, s_lo, kLaplaceQuad);
    return integrate_split(integrand, s_lo, s_hi, s_breaks, kLaplaceQuad);
  };

  const double exponent =
      sigma.density() * integrate_over(inner, region, kLaplaceQuad);
  return std::exp(exponent);
}

double laplace_gamma_closed_form(const TestFunction& f, double theta,
                                 const BaseMeasure& sigma) {
  const Box region = intersect(sigma.box(), f.support());
  if (region.empty() || sigma.density() == 0.0) return 1.0;
  const double integral = integrate_over(
      [&](const Point& x) { return std::log1p(f(x)); }, region, kLaplaceQuad);
  return std::exp(-theta * sigma.density() * integral);
}

PairedCheck mecke_check(const MeckeFunctional& F,
                        const PoissonWindowSampler& law, long n,
                        std::uint64_t seed) {
  const Interval band = law_band(law);
  const Box region = intersect(law.sigma().box(), law.window().lambda);
  const std::vector<double> s_breaks = law.nu().breakpoints();

  RunningStat lhs_stat, rhs_stat, diff_stat;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);

    double lhs = 0.0;
    for (const WeightedAtom& a : eta.atoms())
      lhs += a.weight * F(eta, a.weight, a.position);

    double rhs = 0.0;
    if (!region.empty() && law.sigma().density() > 0.0) {
      auto outer = [&](const Point& x) {
        if (eta.has_atom_at(x)) return 0.0;
        auto integrand = [&](double s) {
          return s * F(eta.add_atom(s, x), s, x) * law.nu().density(s);
        };
        return integrate_split(integrand, band.lo, band.hi, s_breaks,
                               kLaplaceQuad);
      };
      rhs = law.sigma().density() * integrate_over(outer, region, kLaplaceQuad);
    }

    lhs_stat.add(lhs);
    rhs_stat.add(rhs);
    diff_stat.add(lhs - rhs);
  }
  return PairedCheck{lhs_stat.estimate(), rhs_stat.estimate(),
                     diff_stat.z_against(0.0)};
}

namespace {

double multinomial(int n, const std::vector<int>& parts) {
  double v = std::lgamma(n + 1.0);
  for (int p : parts) v -= std::lgamma(p + 1.0);
  return std::round(std::exp(v));
}

/// Sums over ordered compositions of n into k positive parts.
void for_each_composition(int n, int k, std::vector<int>& parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (k == 1) {
    parts.push_back(n);
    fn(parts);
    parts.pop_back();
    return;
  }
  for (int first = 1; first <= n - (k - 1); ++first) {
    parts.push_back(first);
    for_each_composition(n - first, k - 1, parts, fn);
    parts.pop_back();
  }
}

}  // namespace

double moment_exact(int n, const Box& lambda, const LevyIntensity& nu,
                    const BaseMeasure& sigma, std::optional<Interval> band) {
  if (n < 0) throw InvalidArgument("moment order must be >= 0");
  if (n == 0) return 1.0;
  const double s_lo = band ? band->lo : nu.support_lo();
  const double s_hi = band ? band->hi : nu.support_hi();
  const double sig = sigma.mass(lambda);
  if (sig == 0.0) return 0.0;

  std::vector<double> weight_moment(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    weight_moment[static_cast<std::size_t>(j)] = nu.moment(j, s_lo, s_hi);

  double total = 0.0;
  double sig_pow = 1.0;
  double k_fact = 1.0;
  for (int k = 1; k <= n; ++k) {
    sig_pow *= sig;
    k_fact *= k;
    double inner = 0.0;
    std::vector<int> parts;
    for_each_composition(n, k, parts, [&](const std::vector<int>& c) {
      double prod = multinomial(n, c);
      for (int i : c) prod *= weight_moment[static_cast<std::size_t>(i)];
      inner += prod;
    });
    total += sig_pow / k_fact * inner;
  }
  return total;
}

McEstimate moment_mc(int n, const Box& lambda, const PoissonWindowSampler& law,
                     long n_rep, std::uint64_t seed) {
  RunningStat stat;
  for (long r = 0; r < n_rep; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    stat.add(std::pow(eta.mass(lambda), static_cast<double>(n)));
  }
  return stat.estimate();
}

CountLawReport count_law_check(const PoissonWindowSampler& law, long n,
                               std::uint64_t seed) {
  RunningStat counts;
  std::vector<long> histogram;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    const auto c = static_cast<std::size_t>(eta.support_size());
    if (histogram.size() <= c) histogram.resize(c + 1, 0);
    ++histogram[c];
    counts.add(static_cast<double>(eta.support_size()));
  }

  CountLawReport report;
  report.reference = law.mean_count();
  report.mean = counts.estimate();
  report.variance = counts.variance();
  report.z_mean = counts.z_against(report.reference);

  // Sampling error of the variance estimator via the fourth central
  // moment: var(s^2) ~ (m4 - var^2) / n.
  RunningStat fourth;
  const double mean = counts.mean();
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    const double d = static_cast<double>(c) - mean;
    for (long i = 0; i < histogram[c]; ++i) fourth.add(d * d * d * d);
  }
  report.variance_se = std::sqrt(std::max(
      0.0, (fourth.mean() - report.variance * report.variance) /
               static_cast<double>(n)));
  report.z_variance = report.variance_se > 0.0
                          ? (report.variance - report.reference) /
                                report.variance_se
                          : 0.0;

  // Chi-square against the Poisson pmf, merging tail cells below an
  // expected count of 5.
  const double lambda_ref = report.reference;
  std::vector<double> expected;
  double pmf = std::exp(-lambda_ref);
  double used = 0.0;
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    expected.push_back(pmf * static_cast<double>(n));
    used += pmf;
    pmf *= lambda_ref / static_cast<double>(c + 1);
  }
  std::vector<double> exp_cells;
  std::vector<double> obs_cells;
  double exp_acc = 0.0;
  double obs_acc = 0.0;
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    exp_acc += expected[c];
    obs_acc += static_cast<double>(histogram[c]);
    if (exp_acc >= 5.0) {
      exp_cells.push_back(exp_acc);
      obs_cells.push_back(obs_acc);
      exp_acc = obs_acc = 0.0;
    }
  }
  // Everything beyond the observed range, plus any unflushed remainder.
  exp_acc += (1.0 - used) * static_cast<double>(n);
  if (!exp_cells.empty()) {
    exp_cells.back() += exp_acc;
    obs_cells.back() += obs_acc;
  }
  if (exp_cells.size() >= 2) {
    double chi = 0.0;
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
      const double d = obs_cells[i] - exp_cells[i];
      chi += d * d / exp_cells[i];
    }
    report.chi_square = chi;
    report.chi_square_dof = static_cast<double>(exp_cells.size() - 1);
    report.p_value = chi_square_p_value(chi, report.chi_square_dof);
  }
  return report;
}

TruncationCheck gamma_truncation_check(double theta, const BaseMeasure& sigma,
                                       const Box& lambda, double tol, long n,
                                       std::uint64_t seed) {
  const GammaConeSampler coarse(theta, sigma, lambda, tol);
  const GammaConeSampler fine(theta, sigma, lambda, tol / 10.0);
  TruncationCheck check;
  check.budget = theta * sigma.mass(lambda) * coarse.epsilon();
  check.epsilon_coarse = coarse.epsilon();
  check.epsilon_fine = fine.epsilon();

  RunningStat coarse_stat, fine_stat;
  for (long r = 0; r < n; ++r) {
    RngStream rng_c(seed, static_cast<std::uint64_t>(r));
    RngStream rng_f(seed ^ 0x5DEECE66Dull, static_cast<std::uint64_t>(r));
    coarse_stat.add(coarse.sample(rng_c).mass(lambda));
    fine_stat.add(fine.sample(rng_f).mass(lambda));
  }
  check.coarse = coarse_stat.estimate();
  check.fine = fine_stat.estimate();
  return check;
}

}  // namespace cone
