#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "cone/errors.hpp"

namespace cone {

/// Monte-Carlo estimate: sample mean with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n = 0;
};

/// Two paired Monte-Carlo sides of one identity. The z-score comes from
/// the per-draw differences (common random numbers), not from the two
/// marginal standard errors, so shared noise cancels.
struct PairedCheck {
  McEstimate lhs;
  McEstimate rhs;
  double z = 0.0;
};

/// Streaming mean and variance (Welford); numerically stable and
/// deterministic for a fixed visit order.
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }
  double std_dev() const { return std::sqrt(variance()); }
  double std_error() const {
    return n_ > 0 ? std_dev() / std::sqrt(static_cast<double>(n_)) : 0.0;
  }

  McEstimate estimate() const { return McEstimate{mean(), std_error(), n_}; }

  /// z-score of the mean against a reference value; 0 when the data are
  /// exactly constant at the reference.
  double z_against(double reference) const {
    const double se = std_error();
    if (se == 0.0) return mean_ == reference ? 0.0 : std::numeric_limits<double>::infinity();
    return (mean_ - reference) / se;
  }

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

namespace detail {

/// Regularized lower incomplete gamma P(a, x) by series expansion.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction
/// (modified Lentz).
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(a, x); the chi-square survival
/// function is Q(k/2, x/2).
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw InvalidArgument("gamma_q needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_cf(a, x);
}

/// Survival p-value of a chi-square statistic with the given degrees of
/// freedom.
inline double chi_square_p_value(double statistic, double dof) {
  return gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace cone
