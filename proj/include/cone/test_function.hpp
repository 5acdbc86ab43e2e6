#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "cone/errors.hpp"
#include "cone/geometry.hpp"

namespace cone {

/// A bounded measurable function on X, zero outside a compact support
/// box, with a certified sup-bound. Instances come from a small catalog
/// so that supports, bounds and discontinuity locations are all known
/// to the quadrature and certificate machinery.
class TestFunction {
 public:
  enum class Tag { box_indicator, bump, piecewise_constant, polynomial };

  /// height * 1_support(x).
  static TestFunction indicator(Box support, double height = 1.0) {
    const double sup = std::abs(height);
    return TestFunction(Tag::box_indicator, support, sup,
                        [height](const Point&) { return height; });
  }

  /// Smooth bump height * prod_i exp(1 - 1/(1 - t_i^2)) with t_i the
  /// coordinate normalized to (-1, 1); zero on and outside the boundary.
  static TestFunction bump(Box support, double height) {
    Box s = support;
    return TestFunction(Tag::bump, support, std::abs(height),
                        [s, height](const Point& x) {
                          double v = height;
                          for (std::size_t i = 0; i < s.dim(); ++i) {
                            const Interval& side = s.side(i);
                            const double t =
                                (2.0 * x[i] - side.lo - side.hi) / side.length();
                            const double w = 1.0 - t * t;
                            if (w <= 0.0) return 0.0;
                            v *= std::exp(1.0 - 1.0 / w);
                          }
                          return v;
                        });
  }

  /// One-dimensional step function: values[k] on the k-th of equally
  /// sized cells of the domain interval.
  static TestFunction piecewise_constant(Interval domain,
                                         std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("need at least one cell value");
    if (!(domain.length() > 0.0))
      throw InvalidArgument("piecewise-constant domain must have length > 0");
    double sup = 0.0;
    for (double v : values) sup = std::max(sup, std::abs(v));
    const std::size_t n = values.size();
    auto eval = [domain, values](const Point& x) {
      const double t = (x[0] - domain.lo) / domain.length();
      auto k = static_cast<std::size_t>(t * static_cast<double>(values.size()));
      if (k >= values.size()) k = values.size() - 1;
      return values[k];
    };
    TestFunction f(Tag::piecewise_constant, Box({domain}), sup, std::move(eval));
    f.interior_breaks_.resize(1);
    for (std::size_t k = 1; k < n; ++k)
      f.interior_breaks_[0].push_back(
          domain.lo + domain.length() * static_cast<double>(k) /
                          static_cast<double>(n));
    return f;
  }

  /// One-dimensional polynomial sum_i coeffs[i] x^i restricted to the
  /// domain interval. The sup-bound is the coefficient bound
  /// sum |c_i| max(|lo|,|hi|)^i, certified though not tight.
  static TestFunction polynomial(Interval domain, std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    const double m = std::max(std::abs(domain.lo), std::abs(domain.hi));
    double sup = 0.0;
    double mk = 1.0;
    for (double c : coeffs) {
      sup += std::abs(c) * mk;
      mk *= m;
    }
    auto eval = [coeffs](const Point& x) {
      double v = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x[0] + coeffs[i];
      return v;
    };
    return TestFunction(Tag::polynomial, Box({domain}), sup, std::move(eval));
  }

  static TestFunction zero(std::size_t dim) {
    return indicator(Box::unit(dim), 0.0);
  }

  /// f(x), zero outside the support box.
  double operator()(const Point& x) const {
    if (!support_.contains(x)) return 0.0;
    return eval_(x);
  }

  const Box& support() const { return support_; }
  double sup_bound() const { return sup_; }
  Tag tag() const { return tag_; }

  /// Potential kink or jump locations along one axis, including the
  /// support edges; quadrature splits integrals here.
  std::vector<double> breakpoints(std::size_t dim_index) const {
    std::vector<double> b{support_.side(dim_index).lo,
                          support_.side(dim_index).hi};
    if (dim_index < interior_breaks_.size())
      b.insert(b.end(), interior_breaks_[dim_index].begin(),
               interior_breaks_[dim_index].end());
    return b;
  }

  /// c * f, same support and tag.
  TestFunction scaled(double c) const {
    TestFunction g = *this;
    auto base = eval_;
    g.eval_ = [base, c](const Point& x) { return c * base(x); };
    g.sup_ = std::abs(c) * sup_;
    return g;
  }

 private:
  TestFunction(Tag tag, Box support, double sup,
               std::function<double(const Point&)> eval)
      : tag_(tag), support_(std::move(support)), sup_(sup), eval_(std::move(eval)) {}

  Tag tag_;
  Box support_;
  double sup_;
  std::function<double(const Point&)> eval_;
  std::vector<std::vector<double>> interior_breaks_;
};

}  // namespace cone
