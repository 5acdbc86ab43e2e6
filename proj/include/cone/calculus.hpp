#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cone/measure.hpp"
#include "cone/random_measures.hpp"
#include "cone/test_function.hpp"

namespace cone {

/// Weight interval for marks; the upper end may be +infinity, as in the
/// mark s itself, whose integrability against nu comes from the
/// intensity's moments rather than from a bound.
struct WeightRange {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double s) const { return lo <= s && s <= hi; }
  bool bounded() const { return std::isfinite(hi); }
};

/// A test function phi(s, x) on the marked space (0, infinity) x X,
/// vanishing outside a weight range and a position box.
class MarkedTestFunction {
 public:
  enum class Tag { weighted_position, box_indicator, bump };

  /// phi(s, x) = s f(x), optionally cut to a weight range.
  static MarkedTestFunction weighted_position(
      TestFunction f, WeightRange range = WeightRange{});

  /// phi = height on [band] x lambda.
  static MarkedTestFunction box_indicator(Interval band, Box lambda,
                                          double height = 1.0);

  /// Smooth bump in s times a smooth bump in x.
  static MarkedTestFunction bump(Interval band, Box lambda, double height);

  double operator()(double s, const Point& x) const {
    if (!range_.contains(s) || s <= 0.0) return 0.0;
    return eval_(s, x);
  }

  Tag tag() const { return tag_; }
  const WeightRange& weight_range() const { return range_; }
  const Box& position_support() const { return support_; }

  /// +infinity when the weight range is unbounded and the weight enters
  /// linearly; cylinder functions stay bounded through their outer g.
  double sup_bound() const { return sup_; }

  /// Finite weight-axis kink locations for split quadrature.
  std::vector<double> weight_breakpoints() const;

  /// Jump locations along one position axis, support edges included.
  std::vector<double> position_breakpoints(std::size_t dim_index) const;

  /// True when x maps to phi(s, x) is constant between consecutive
  /// position breakpoints; birth-side quadrature then collapses the
  /// position integral to a cell sum.
  bool position_piecewise_constant() const { return x_piecewise_const_; }

 private:
  MarkedTestFunction(Tag tag, WeightRange range, Box support,
                     std::function<double(double, const Point&)> eval)
      : tag_(tag),
        range_(range),
        support_(std::move(support)),
        eval_(std::move(eval)) {}

  Tag tag_;
  WeightRange range_;
  Box support_;
  std::function<double(double, const Point&)> eval_;
  double sup_ = 0.0;
  bool x_piecewise_const_ = false;
  std::vector<std::vector<double>> x_interior_breaks_;
};

/// A bounded cylinder function F(eta) = g(sum_i alpha_i <R^{-1} eta,
/// phi_i>) with g from a bounded smooth catalog. F sees eta only
/// through the atoms inside the union support of the phi_i, and
/// |F| <= sup|g| everywhere.
class CylinderFunction {
 public:
  struct Term {
    double alpha = 1.0;
    MarkedTestFunction phi;
  };

  /// g(t) = polynomial in t with the argument clamped to [-clamp, clamp].
  static CylinderFunction polynomial(std::vector<Term> terms,
                                     std::vector<double> coeffs, double clamp);

  /// g(t) = exp(-t^2).
  static CylinderFunction gaussian(std::vector<Term> terms);

  /// g(t) = tanh(t).
  static CylinderFunction tanh_linear(std::vector<Term> terms);

  double operator()(const FiniteDiscreteMeasure& eta) const {
    return outer(inner_value(eta));
  }

  /// t(eta) = sum_i alpha_i sum_atoms phi_i(s, x).
  double inner_value(const FiniteDiscreteMeasure& eta) const;

  /// t(eta + s delta_x) - t(eta), independent of eta by linearity.
  double inner_delta(double s, const Point& x) const;

  double outer(double t) const { return outer_(t); }
  double sup_outer() const { return sup_outer_; }

  const std::vector<Term>& terms() const { return *terms_; }

  /// Hull of the phi position supports: atoms outside cannot move F.
  const Box& position_window() const { return position_window_; }
  /// Hull of the phi weight ranges.
  const WeightRange& weight_window() const { return weight_window_; }
  std::vector<double> weight_breakpoints() const;

 private:
  CylinderFunction(std::vector<Term> terms, std::function<double(double)> outer,
                   double sup_outer);

  std::shared_ptr<const std::vector<Term>> terms_;
  std::function<double(double)> outer_;
  double sup_outer_;
  Box position_window_;
  WeightRange weight_window_;
};

/// F(eta - s_x delta_x) - F(eta); the atom must exist.
double death_gradient(const CylinderFunction& F,
                      const FiniteDiscreteMeasure& eta, const Point& x);

/// F(eta + s delta_x) - F(eta); the position must be free.
double birth_gradient(const CylinderFunction& F,
                      const FiniteDiscreteMeasure& eta, double s,
                      const Point& x);

/// sum_x s_x h(x) (D^-_x F)(eta).
double directional_death(const CylinderFunction& F,
                         const FiniteDiscreteMeasure& eta,
                         const TestFunction& h);

/// integral of (D^+_{(s,x)} F)(eta) s h(x) nu(ds) sigma(dx) by nested
/// adaptive quadrature (tolerance 1e-8); the weight integral runs over
/// `band` when given, else over nu's full support.
double directional_birth(const CylinderFunction& F,
                         const FiniteDiscreteMeasure& eta,
                         const TestFunction& h, const LevyIntensity& nu,
                         const BaseMeasure& sigma,
                         std::optional<Interval> band = std::nullopt);

/// B_{nu,sigma,h}(eta) = <eta, h> - integral of s nu(ds) * integral of
/// h d sigma, the boundary term of the integration-by-parts identity.
double b_functional(const FiniteDiscreteMeasure& eta, const TestFunction& h,
                    const LevyIntensity& nu, const BaseMeasure& sigma,
                    std::optional<Interval> band = std::nullopt);

/// Generator (LF)(eta) = integral of D^-_x F d eta + integral of
/// (D^+_{(s,x)} F) s nu(ds) sigma(dx).
double generator_L(const CylinderFunction& F, const FiniteDiscreteMeasure& eta,
                   const LevyIntensity& nu, const BaseMeasure& sigma,
                   std::optional<Interval> band = std::nullopt);

/// E[D_h^- F * G] against E[F * D_h^+ G] - E[F * G * B_{nu,sigma,h}]
/// under the window sampler's law, evaluated on common draws.
PairedCheck ibp_check(const CylinderFunction& F, const CylinderFunction& G,
                      const TestFunction& h, const PoissonWindowSampler& law,
                      long n, std::uint64_t seed);

/// Monte-Carlo death-form E[sum_x s_x (D^-_x F)(D^-_x G)].
McEstimate dirichlet_death(const CylinderFunction& F, const CylinderFunction& G,
                           const PoissonWindowSampler& law, long n,
                           std::uint64_t seed);

/// Monte-Carlo birth-form E[integral of s (D^+ F)(D^+ G) d nu d sigma],
/// the inner integral by quadrature.
McEstimate dirichlet_birth(const CylinderFunction& F, const CylinderFunction& G,
                           const PoissonWindowSampler& law, long n,
                           std::uint64_t seed);

/// Death and birth Dirichlet forms on common draws; they estimate the
/// same form.
PairedCheck dirichlet_forms_check(const CylinderFunction& F,
                                  const CylinderFunction& G,
                                  const PoissonWindowSampler& law, long n,
                                  std::uint64_t seed);

/// Death form against E[-LF * G] on common draws (form-generator
/// duality).
PairedCheck form_generator_check(const CylinderFunction& F,
                                 const CylinderFunction& G,
                                 const PoissonWindowSampler& law, long n,
                                 std::uint64_t seed);

}  // namespace cone
