#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "cone/errors.hpp"
#include "cone/geometry.hpp"
#include "cone/quadrature.hpp"
#include "cone/rng.hpp"

namespace cone {

/// Levy intensity nu on (0, infinity), given by a density from a small
/// catalog. The gamma intensity theta s^{-1} e^{-s} has infinite total
/// mass but finite first moment; the others are finite measures with
/// compact support. Moments over weight bands come from adaptive
/// quadrature, never from closed forms, so they can serve as one side
/// of an identity without sharing code with the other.
class LevyIntensity {
 public:
  enum class Tag { gamma, truncated_uniform, finite_beta };

  /// nu_theta(ds) = theta s^{-1} e^{-s} ds on (0, infinity).
  static LevyIntensity gamma(double theta);

  /// Constant density `height` on [lo, hi], 0 < lo < hi.
  static LevyIntensity truncated_uniform(double lo, double hi, double height);

  /// mass * Beta(alpha, beta) density on (0, 1); alpha >= 1 keeps the
  /// density bounded, which the weight tables rely on.
  static LevyIntensity finite_beta(double alpha, double beta, double mass);

  Tag tag() const { return tag_; }
  double theta() const { return theta_; }

  double density(double s) const { return s > 0.0 ? density_(s) : 0.0; }

  /// Lower and upper end of the density's support; the upper end is
  /// +infinity for the gamma intensity.
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  bool infinite_activity() const { return tag_ == Tag::gamma; }

  /// integral of s^n over [a, b] against nu, by adaptive quadrature;
  /// b may be +infinity when the moment exists there.
  double moment(int n, double a, double b) const;

  /// nu([a, b]).
  double mass(double a, double b) const { return moment(0, a, b); }

  /// integral of s nu(ds) over the full support; finite for the whole
  /// catalog and validated at construction.
  double first_moment_total() const { return first_moment_; }

  /// Density kink locations (support edges) for split quadrature.
  std::vector<double> breakpoints() const;

 private:
  LevyIntensity(Tag tag, double lo, double hi,
                std::function<double(double)> density);

  Tag tag_;
  double theta_ = 0.0;
  double lo_;
  double hi_;
  double first_moment_ = 0.0;
  std::function<double(double)> density_;
};

/// Base measure sigma = density * Lebesgue on a box in R^d; non-atomic,
/// with closed-form mass on boxes.
class BaseMeasure {
 public:
  BaseMeasure(Box box, double density) : box_(std::move(box)), density_(density) {
    if (!(density >= 0.0) || !std::isfinite(density))
      throw InvalidArgument("base measure density must be finite and >= 0");
    if (box_.empty()) throw InvalidArgument("base measure box must be nonempty");
  }

  const Box& box() const { return box_; }
  double density() const { return density_; }

  double mass(const Box& region) const {
    return density_ * intersect(box_, region).volume();
  }
  double total_mass() const { return density_ * box_.volume(); }

  /// Uniform point on box intersect within (which must have positive
  /// volume; callers guard via mass()).
  Point sample(RngStream& rng, const Box& within) const {
    return sample_point(rng, intersect(box_, within));
  }

 private:
  Box box_;
  double density_;
};

/// Draws weights from nu restricted to [a, b], normalized, by inversion
/// of a tabulated CDF: cells log-spaced over the effective support with
/// density breakpoints inserted, each draw refined inside its cell by
/// safeguarded Newton to 1e-12 relative CDF accuracy. One uniform is
/// consumed per draw.
class WeightSampler {
 public:
  WeightSampler(const LevyIntensity& nu, double a, double b,
                std::size_t cells = 4096);

  /// nu([a, b]) as accumulated by the table.
  double mass() const { return cum_.back(); }

  double sample(RngStream& rng) const;

 private:
  std::function<double(double)> density_;
  std::vector<double> knots_;
  std::vector<double> cum_;
};

}  // namespace cone
