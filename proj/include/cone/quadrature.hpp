#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cone/errors.hpp"
#include "cone/geometry.hpp"

namespace cone {

/// Tolerances and budget for deterministic adaptive quadrature.
struct QuadratureOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_intervals = 5000;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr std::array<double, 4> kGauss7Weights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
};

/// One Gauss-Kronrod 7-15 rule application with the QUADPACK error
/// estimate, which stays meaningful on rough integrands.
template <class F>
Segment gk15(F&& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (lo + hi);

  std::array<double, 15> fv{};
  for (std::size_t i = 0; i < 7; ++i) {
    fv[i] = f(mid - half * kGk15Nodes[i]);
    fv[14 - i] = f(mid + half * kGk15Nodes[i]);
  }
  fv[7] = f(mid);

  double resk = kGk15Weights[7] * fv[7];
  double resabs = std::abs(resk);
  double resg = kGauss7Weights[3] * fv[7];
  for (std::size_t i = 0; i < 7; ++i) {
    resk += kGk15Weights[i] * (fv[i] + fv[14 - i]);
    resabs += kGk15Weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) resg += kGauss7Weights[i / 2] * (fv[i] + fv[14 - i]);
  }

  const double reskh = resk * 0.5;
  double resasc = kGk15Weights[7] * std::abs(fv[7] - reskh);
  for (std::size_t i = 0; i < 7; ++i)
    resasc += kGk15Weights[i] *
              (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));

  double err = std::abs(resk - resg) * half;
  resasc *= half;
  resabs *= half;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * resabs);

  return Segment{lo, hi, resk * half, err};
}

}  // namespace detail

/// Adaptive quadrature of f over [lo, hi] to within
/// max(abs_tol, rel_tol * |result|). Deterministic: the subdivision
/// sequence depends only on the integrand values. Throws
/// QuadratureFailure when the interval budget is exhausted first.
template <class F>
double integrate(F&& f, double lo, double hi,
                 const QuadratureOptions& opts = {}) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw InvalidArgument("integration limits must be finite");
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, opts);

  auto worse = [](const detail::Segment& a, const detail::Segment& b) {
    return a.error < b.error;
  };
  std::vector<detail::Segment> segs;
  segs.push_back(detail::gk15(f, lo, hi));

  while (true) {
    double total = 0.0;
    double err = 0.0;
    for (const detail::Segment& s : segs) {
      total += s.value;
      err += s.error;
    }
    if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)))
      return total;
    if (static_cast<int>(segs.size()) >= opts.max_intervals)
      throw QuadratureFailure("tolerance unreachable within interval budget");

    std::pop_heap(segs.begin(), segs.end(), worse);
    const detail::Segment s = segs.back();
    segs.pop_back();
    const double mid = 0.5 * (s.lo + s.hi);
    segs.push_back(detail::gk15(f, s.lo, mid));
    std::push_heap(segs.begin(), segs.end(), worse);
    segs.push_back(detail::gk15(f, mid, s.hi));
    std::push_heap(segs.begin(), segs.end(), worse);
  }
}

/// Integral over [lo, inf) via the compactifying substitution
/// s = lo + t / (1 - t). Intended for integrands with at least
/// exponential decay; values within 1e-14 of the cut map to zero.
template <class F>
double integrate_to_inf(F&& f, double lo, const QuadratureOptions& opts = {}) {
  auto g = [&](double t) {
    const double u = 1.0 - t;
    if (u < 1e-14) return 0.0;
    const double s = lo + t / u;
    return f(s) / (u * u);
  };
  return integrate(g, 0.0, 1.0, opts);
}

/// Integral over [lo, hi] split at interior breakpoints, for integrands
/// that are smooth between known kinks or jumps.
template <class F>
double integrate_split(F&& f, double lo, double hi,
                       std::span<const double> breakpoints,
                       const QuadratureOptions& opts = {}) {
  std::vector<double> cuts;
  cuts.push_back(lo);
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] < cuts[i + 1]) total += integrate(f, cuts[i], cuts[i + 1], opts);
  return total;
}

/// Iterated quadrature of f : Box -> R over an axis-aligned box.
template <class F>
double integrate_over(F&& f, const Box& box,
                      const QuadratureOptions& opts = {}) {
  if (box.empty()) return 0.0;
  std::vector<double> coords(box.dim(), 0.0);
  struct Rec {
    F& f;
    const Box& box;
    const QuadratureOptions& opts;
    std::vector<double>& coords;

    double run(std::size_t d) {
      if (d == box.dim()) return f(Point(coords));
      return integrate(
          [&](double t) {
            coords[d] = t;
            return run(d + 1);
          },
          box.side(d).lo, box.side(d).hi, opts);
    }
  } rec{f, box, opts, coords};
  return rec.run(0);
}

}  // namespace cone
