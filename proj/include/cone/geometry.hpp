#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "cone/errors.hpp"

namespace cone {

/// A location in the base space X, a subset of R^d.
///
/// Points order lexicographically so that atom lists, map keys and
/// serialized output have one canonical form.
class Point {
 public:
  Point() = default;

  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    validate();
  }

  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords_ == b.coords_;
  }

  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    const std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
      if (a.coords_[i] > b.coords_[i]) return std::strong_ordering::greater;
    }
    if (a.dim() != b.dim())
      return a.dim() < b.dim() ? std::strong_ordering::less
                               : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void validate() const {
    for (double c : coords_) {
      if (!std::isfinite(c)) throw InvalidArgument("point coordinate is not finite");
    }
  }

  std::vector<double> coords_;
};

/// A closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw InvalidArgument("interval must satisfy lo <= hi with finite ends");
  }

  double length() const { return hi - lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
  double midpoint() const { return 0.5 * (lo + hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// An axis-aligned closed box in R^d, the shape used for windows, test
/// function supports and base-measure domains.
class Box {
 public:
  Box() = default;

  explicit Box(std::vector<Interval> sides) : sides_(std::move(sides)) {}

  static Box unit(std::size_t d) {
    std::vector<Interval> s(d, Interval(0.0, 1.0));
    return Box(std::move(s));
  }

  static Box cube(std::size_t d, double lo, double hi) {
    std::vector<Interval> s(d, Interval(lo, hi));
    return Box(std::move(s));
  }

  std::size_t dim() const { return sides_.size(); }
  const Interval& side(std::size_t i) const { return sides_[i]; }
  const std::vector<Interval>& sides() const { return sides_; }

  double volume() const {
    double v = 1.0;
    for (const Interval& s : sides_) v *= s.length();
    return v;
  }

  bool contains(const Point& x) const {
    if (x.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!sides_[i].contains(x[i])) return false;
    }
    return true;
  }

  /// Intersection as a box; empty intersections collapse to a degenerate
  /// box flagged by empty().
  friend Box intersect(const Box& a, const Box& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("box dimension mismatch");
    std::vector<Interval> s;
    s.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const double lo = std::max(a.sides_[i].lo, b.sides_[i].lo);
      const double hi = std::min(a.sides_[i].hi, b.sides_[i].hi);
      if (lo > hi) return Box{};
      s.emplace_back(lo, hi);
    }
    return Box(std::move(s));
  }

  friend Box hull(const Box& a, const Box& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.dim() != b.dim()) throw InvalidArgument("box dimension mismatch");
    std::vector<Interval> s;
    s.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      s.emplace_back(std::min(a.sides_[i].lo, b.sides_[i].lo),
                     std::max(a.sides_[i].hi, b.sides_[i].hi));
    }
    return Box(std::move(s));
  }

  /// True for the zero-dimensional box, which stands in for an empty
  /// region (it contains no point of a d >= 1 space).
  bool empty() const { return sides_.empty(); }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> sides_;
};

/// A window (Lambda, [a, b]): a bounded position region together with a
/// weight band bounded away from zero. Projecting a Radon measure onto a
/// window always leaves finitely many atoms.
struct Window {
  Box lambda;
  double a = 0.0;
  double b = 0.0;

  Window() = default;

  Window(Box lambda_, double a_, double b_)
      : lambda(std::move(lambda_)), a(a_), b(b_) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !(a < b))
      throw InvalidArgument("window weight band needs 0 < a < b < inf");
    if (lambda.empty()) throw InvalidArgument("window region must be nonempty");
  }

  bool admits(double s, const Point& x) const {
    return a <= s && s <= b && lambda.contains(x);
  }

  friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace cone
