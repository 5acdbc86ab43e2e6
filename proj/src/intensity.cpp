#include "cone/intensity.hpp"

#include <algorithm>
#include <cmath>

namespace cone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

LevyIntensity::LevyIntensity(Tag tag, double lo, double hi,
                             std::function<double(double)> density)
    : tag_(tag), lo_(lo), hi_(hi), density_(std::move(density)) {
  first_moment_ = moment(1, lo_, hi_);
  if (!std::isfinite(first_moment_))
    throw InvalidArgument("intensity must have a finite first moment");
}

LevyIntensity LevyIntensity::gamma(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw InvalidArgument("gamma intensity needs theta > 0");
  LevyIntensity nu(
      Tag::gamma, 0.0, kInf,
      [theta](double s) { return theta * std::exp(-s) / s; });
  nu.theta_ = theta;
  return nu;
}

LevyIntensity LevyIntensity::truncated_uniform(double lo, double hi,
                                               double height) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw InvalidArgument("truncated uniform intensity needs 0 < lo < hi");
  if (!(height > 0.0) || !std::isfinite(height))
    throw InvalidArgument("truncated uniform intensity needs height > 0");
  return LevyIntensity(Tag::truncated_uniform, lo, hi,
                       [lo, hi, height](double s) {
                         return (lo <= s && s <= hi) ? height : 0.0;
                       });
}

LevyIntensity LevyIntensity::finite_beta(double alpha, double beta,
                                         double mass) {
  if (!(alpha >= 1.0) || !(beta >= 1.0))
    throw InvalidArgument("finite beta intensity needs alpha, beta >= 1");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw InvalidArgument("finite beta intensity needs mass > 0");
  const double scale = mass * std::exp(-lbeta(alpha, beta));
  return LevyIntensity(Tag::finite_beta, 0.0, 1.0,
                       [alpha, beta, scale](double s) {
                         if (s <= 0.0 || s >= 1.0) return 0.0;
                         return scale * std::pow(s, alpha - 1.0) *
                                std::pow(1.0 - s, beta - 1.0);
                       });
}

double LevyIntensity::moment(int n, double a, double b) const {
  if (n < 0) throw InvalidArgument("moment order must be >= 0");
  const double lo = std::max(a, lo_);
  const double hi = std::min(b, hi_);
  if (!(lo < hi)) return 0.0;
  auto integrand = [this, n](double s) {
    return std::pow(s, static_cast<double>(n)) * density_(s);
  };
  if (std::isinf(hi)) return integrate_to_inf(integrand, lo);
  return integrate(integrand, lo, hi);
}

std::vector<double> LevyIntensity::breakpoints() const {
  std::vector<double> b{lo_};
  if (std::isfinite(hi_)) b.push_back(hi_);
  return b;
}

WeightSampler::WeightSampler(const LevyIntensity& nu, double a, double b,
                             std::size_t cells)
    : density_([&nu](double s) { return nu.density(s); }) {
  const double lo = std::max(a, nu.support_lo());
  const double hi = std::min(b, nu.support_hi());
  if (!(lo < hi) || !std::isfinite(hi))
    throw InvalidArgument("weight sampler needs a finite band with mass");
  if (cells < 2) cells = 2;

  knots_.reserve(cells + 3);
  if (lo > 0.0) {
    const double ratio = hi / lo;
    for (std::size_t i = 0; i <= cells; ++i)
      knots_.push_back(lo * std::pow(ratio, static_cast<double>(i) /
                                                static_cast<double>(cells)));
  } else {
    for (std::size_t i = 0; i <= cells; ++i)
      knots_.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(cells));
  }
  for (double brk : nu.breakpoints())
    if (brk > lo && brk < hi) knots_.push_back(brk);
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  knots_.front() = lo;
  knots_.back() = hi;

  cum_.resize(knots_.size(), 0.0);
  for (std::size_t i = 1; i < knots_.size(); ++i)
    cum_[i] = cum_[i - 1] +
              detail::gk15(density_, knots_[i - 1], knots_[i]).value;
  if (!(cum_.back() > 0.0))
    throw InvalidArgument("weight sampler band carries no mass");
}

double WeightSampler::sample(RngStream& rng) const {
  const double target = rng.next_double() * cum_.back();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  std::size_t cell = static_cast<std::size_t>(it - cum_.begin());
  if (cell == 0) cell = 1;
  if (cell >= cum_.size()) cell = cum_.size() - 1;

  double lo = knots_[cell - 1];
  double hi = knots_[cell];
  const double local_target = target - cum_[cell - 1];
  double s = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double cdf = detail::gk15(density_, knots_[cell - 1], s).value;
    const double err = cdf - local_target;
    if (std::abs(err) <= 1e-12 * cum_.back() || hi - lo <= 1e-15 * knots_[cell])
      break;
    if (err > 0.0)
      hi = s;
    else
      lo = s;
    const double d = density_(s);
    double next = d > 0.0 ? s - err / d : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  return s;
}

}  // namespace cone
