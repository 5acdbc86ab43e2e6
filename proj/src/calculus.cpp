#include "cone/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cone/quadrature.hpp"

namespace cone {

namespace {

constexpr QuadratureOptions kBirthQuad{1e-8, 1e-8, 4000};
constexpr QuadratureOptions kSetupQuad{1e-10, 1e-10, 5000};

double bump_1d(const Interval& band, double s) {
  const double t = (2.0 * s - band.lo - band.hi) / band.length();
  const double w = 1.0 - t * t;
  return w > 0.0 ? std::exp(1.0 - 1.0 / w) : 0.0;
}

}  // namespace

MarkedTestFunction MarkedTestFunction::weighted_position(TestFunction f,
                                                         WeightRange range) {
  if (!(range.lo >= 0.0) || !(range.hi > range.lo))
    throw InvalidArgument("weight range must satisfy 0 <= lo < hi");
  const Box support = f.support();
  const bool piecewise = f.tag() == TestFunction::Tag::box_indicator ||
                         f.tag() == TestFunction::Tag::piecewise_constant;
  const double fsup = f.sup_bound();
  std::vector<std::vector<double>> breaks(support.dim());
  for (std::size_t d = 0; d < support.dim(); ++d) breaks[d] = f.breakpoints(d);
  auto eval = [f = std::move(f)](double s, const Point& x) { return s * f(x); };
  MarkedTestFunction phi(Tag::weighted_position, range, support, std::move(eval));
  phi.sup_ = range.bounded() ? range.hi * fsup
                             : (fsup == 0.0
                                    ? 0.0
                                    : std::numeric_limits<double>::infinity());
  phi.x_piecewise_const_ = piecewise;
  phi.x_interior_breaks_ = std::move(breaks);
  return phi;
}

MarkedTestFunction MarkedTestFunction::box_indicator(Interval band, Box lambda,
                                                     double height) {
  if (!(band.lo > 0.0)) throw InvalidArgument("weight band must start above 0");
  if (lambda.empty()) throw InvalidArgument("position box must be nonempty");
  if (!std::isfinite(height)) throw InvalidArgument("height must be finite");
  auto eval = [lambda, height](double, const Point& x) {
    return lambda.contains(x) ? height : 0.0;
  };
  MarkedTestFunction phi(Tag::box_indicator, WeightRange{band.lo, band.hi},
                         lambda, std::move(eval));
  phi.sup_ = std::abs(height);
  phi.x_piecewise_const_ = true;
  return phi;
}

MarkedTestFunction MarkedTestFunction::bump(Interval band, Box lambda,
                                            double height) {
  if (!(band.lo > 0.0) || !(band.length() > 0.0))
    throw InvalidArgument("weight band must satisfy 0 < lo < hi");
  if (lambda.empty()) throw InvalidArgument("position box must be nonempty");
  if (!std::isfinite(height)) throw InvalidArgument("height must be finite");
  TestFunction xb = TestFunction::bump(lambda, 1.0);
  auto eval = [band, xb = std::move(xb), height](double s, const Point& x) {
    return height * bump_1d(band, s) * xb(x);
  };
  MarkedTestFunction phi(Tag::bump, WeightRange{band.lo, band.hi}, lambda,
                         std::move(eval));
  phi.sup_ = std::abs(height);
  phi.x_piecewise_const_ = false;
  return phi;
}

std::vector<double> MarkedTestFunction::weight_breakpoints() const {
  std::vector<double> b{range_.lo};
  if (range_.bounded()) b.push_back(range_.hi);
  return b;
}

std::vector<double> MarkedTestFunction::position_breakpoints(
    std::size_t dim_index) const {
  std::vector<double> b{support_.side(dim_index).lo,
                        support_.side(dim_index).hi};
  if (dim_index < x_interior_breaks_.size())
    b.insert(b.end(), x_interior_breaks_[dim_index].begin(),
             x_interior_breaks_[dim_index].end());
  return b;
}

CylinderFunction::CylinderFunction(std::vector<Term> terms,
                                   std::function<double(double)> outer,
                                   double sup_outer)
    : terms_(std::make_shared<const std::vector<Term>>(std::move(terms))),
      outer_(std::move(outer)),
      sup_outer_(sup_outer) {
  bool first = true;
  for (const Term& term : *terms_) {
    if (!std::isfinite(term.alpha))
      throw InvalidArgument("term coefficient must be finite");
    if (first) {
      position_window_ = term.phi.position_support();
      weight_window_ = term.phi.weight_range();
      first = false;
    } else {
      position_window_ = hull(position_window_, term.phi.position_support());
      weight_window_.lo = std::min(weight_window_.lo, term.phi.weight_range().lo);
      weight_window_.hi = std::max(weight_window_.hi, term.phi.weight_range().hi);
    }
  }
  if (first) weight_window_ = WeightRange{0.0, 0.0};
}

CylinderFunction CylinderFunction::polynomial(std::vector<Term> terms,
                                              std::vector<double> coeffs,
                                              double clamp) {
  if (!(clamp > 0.0) || !std::isfinite(clamp))
    throw InvalidArgument("clamp radius must be finite and > 0");
  if (coeffs.empty()) coeffs.push_back(0.0);
  double sup = 0.0;
  double ck = 1.0;
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InvalidArgument("coefficient must be finite");
    sup += std::abs(c) * ck;
    ck *= clamp;
  }
  auto outer = [coeffs = std::move(coeffs), clamp](double t) {
    t = std::clamp(t, -clamp, clamp);
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
  };
  return CylinderFunction(std::move(terms), std::move(outer), sup);
}

CylinderFunction CylinderFunction::gaussian(std::vector<Term> terms) {
  return CylinderFunction(
      std::move(terms), [](double t) { return std::exp(-t * t); }, 1.0);
}

CylinderFunction CylinderFunction::tanh_linear(std::vector<Term> terms) {
  return CylinderFunction(
      std::move(terms), [](double t) { return std::tanh(t); }, 1.0);
}

double CylinderFunction::inner_value(const FiniteDiscreteMeasure& eta) const {
  double t = 0.0;
  for (const Term& term : *terms_) {
    double acc = 0.0;
    for (const WeightedAtom& a : eta.atoms()) acc += term.phi(a.weight, a.position);
    t += term.alpha * acc;
  }
  return t;
}

double CylinderFunction::inner_delta(double s, const Point& x) const {
  double d = 0.0;
  for (const Term& term : *terms_) d += term.alpha * term.phi(s, x);
  return d;
}

std::vector<double> CylinderFunction::weight_breakpoints() const {
  std::vector<double> b;
  for (const Term& term : *terms_) {
    const std::vector<double> tb = term.phi.weight_breakpoints();
    b.insert(b.end(), tb.begin(), tb.end());
  }
  return b;
}

double death_gradient(const CylinderFunction& F,
                      const FiniteDiscreteMeasure& eta, const Point& x) {
  return F(eta.remove_atom(x)) - F(eta);
}

double birth_gradient(const CylinderFunction& F,
                      const FiniteDiscreteMeasure& eta, double s,
                      const Point& x) {
  return F(eta.add_atom(s, x)) - F(eta);
}

double directional_death(const CylinderFunction& F,
                         const FiniteDiscreteMeasure& eta,
                         const TestFunction& h) {
  double acc = 0.0;
  for (const WeightedAtom& a : eta.atoms()) {
    const double hx = h(a.position);
    if (hx == 0.0) continue;
    acc += a.weight * hx * death_gradient(F, eta, a.position);
  }
  return acc;
}

namespace {

/// Shared machinery for every integral of the form
///   I = integral of s * q(dF(s,x), dG(s,x)) * w(x) nu(ds) sigma(dx)
/// with dF, dG the inner increments of one or two cylinder functions and
/// q vanishing at (0, 0). The position domain splits into cells along
/// every breakpoint of the test functions involved; on cells where all
/// increments are constant in x the position integral collapses to a
/// precomputed weight, leaving one adaptive integral in s per cell and
/// per call.
class BirthQuadrature {
 public:
  enum class Mode { single, product };

  BirthQuadrature(Mode mode, const CylinderFunction& F,
                  const CylinderFunction* G, const TestFunction* w,
                  const LevyIntensity& nu, const BaseMeasure& sigma,
                  std::optional<Interval> band, const Box* clip)
      : F_(&F), G_(G), w_(w), nu_(&nu), sigma_dens_(sigma.density()) {
    WeightRange wr = F.weight_window();
    if (mode == Mode::product && G != nullptr) {
      wr.lo = std::max(wr.lo, G->weight_window().lo);
      wr.hi = std::min(wr.hi, G->weight_window().hi);
    }
    slo_ = std::max({wr.lo, nu.support_lo(), band ? band->lo : 0.0});
    double hi = std::min(wr.hi, nu.support_hi());
    if (band) hi = std::min(hi, band->hi);
    if (!(hi > slo_)) return;

    std::vector<double> sb = nu.breakpoints();
    auto add_term_breaks = [&sb](const CylinderFunction& C) {
      const std::vector<double> tb = C.weight_breakpoints();
      for (double v : tb)
        if (std::isfinite(v)) sb.push_back(v);
    };
    add_term_breaks(F);
    if (G != nullptr) add_term_breaks(*G);
    if (std::isinf(hi)) {
      to_inf_ = true;
      shi_ = std::max(slo_ + 1.0, 12.0);
      for (double v : sb) shi_ = std::max(shi_, v);
    } else {
      shi_ = hi;
    }
    sbreaks_ = std::move(sb);

    Box domain = sigma.box();
    if (clip != nullptr) domain = intersect(domain, *clip);
    domain = mode == Mode::product && G != nullptr
                 ? intersect(intersect(domain, F.position_window()),
                             G->position_window())
                 : intersect(domain, F.position_window());
    if (w != nullptr) domain = intersect(domain, w->support());
    if (domain.empty()) return;

    build_cells(domain);
  }

  bool trivial() const { return cells_.empty(); }

  /// q must vanish at (0, 0); cells where every increment is
  /// identically zero are skipped outright.
  template <class Q>
  double integrate(Q&& q) const {
    double total = 0.0;
    for (const Cell& c : cells_) {
      if (c.fast) {
        auto fs = [&](double s) {
          const double dF = F_->inner_delta(s, c.rep);
          const double dG = G_ != nullptr ? G_->inner_delta(s, c.rep) : 0.0;
          return s * q(dF, dG) * nu_->density(s);
        };
        total += c.wmass * s_integral(fs);
      } else {
        auto fx = [&](const Point& x) {
          const double wv = w_ != nullptr ? (*w_)(x) : 1.0;
          if (wv == 0.0) return 0.0;
          auto fs = [&](double s) {
            const double dF = F_->inner_delta(s, x);
            const double dG = G_ != nullptr ? G_->inner_delta(s, x) : 0.0;
            return s * q(dF, dG) * nu_->density(s);
          };
          return s_integral(fs) * wv;
        };
        total += sigma_dens_ * integrate_over(fx, c.box, kBirthQuad);
      }
    }
    return total;
  }

 private:
  struct Cell {
    Box box;
    bool fast = false;
    Point rep;
    double wmass = 0.0;
  };

  template <class F1>
  double s_integral(F1& f) const {
    double v = integrate_split(f, slo_, shi_, sbreaks_, kBirthQuad);
    if (to_inf_) v += integrate_to_inf(f, shi_, kBirthQuad);
    return v;
  }

  void build_cells(const Box& domain) {
    const std::size_t d = domain.dim();
    std::vector<std::vector<double>> edges(d);
    for (std::size_t i = 0; i < d; ++i) {
      edges[i] = {domain.side(i).lo, domain.side(i).hi};
      auto add = [&](const std::vector<double>& bs) {
        for (double v : bs)
          if (v > domain.side(i).lo && v < domain.side(i).hi)
            edges[i].push_back(v);
      };
      for (const CylinderFunction::Term& t : F_->terms())
        add(t.phi.position_breakpoints(i));
      if (G_ != nullptr)
        for (const CylinderFunction::Term& t : G_->terms())
          add(t.phi.position_breakpoints(i));
      if (w_ != nullptr) add(w_->breakpoints(i));
      std::sort(edges[i].begin(), edges[i].end());
      edges[i].erase(std::unique(edges[i].begin(), edges[i].end()),
                     edges[i].end());
    }

    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<Interval> sides;
      sides.reserve(d);
      bool degenerate = false;
      for (std::size_t i = 0; i < d; ++i) {
        const double lo = edges[i][idx[i]];
        const double hi = edges[i][idx[i] + 1];
        if (!(hi > lo)) degenerate = true;
        sides.emplace_back(lo, hi);
      }
      if (!degenerate) add_cell(Box(std::move(sides)));

      std::size_t k = 0;
      while (k < d && idx[k] + 2 >= edges[k].size()) {
        idx[k] = 0;
        ++k;
      }
      if (k == d) break;
      ++idx[k];
    }
  }

  void add_cell(Box box) {
    Cell c;
    std::vector<double> mid(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) mid[i] = box.side(i).midpoint();
    c.rep = Point(mid);

    auto constant_on = [&](const CylinderFunction& C) {
      for (const CylinderFunction::Term& t : C.terms()) {
        if (t.phi.position_piecewise_constant()) continue;
        if (t.phi.position_support().contains(c.rep)) return false;
      }
      return true;
    };
    auto vanishes_on = [&](const CylinderFunction& C) {
      for (const CylinderFunction::Term& t : C.terms())
        if (t.phi.position_support().contains(c.rep)) return false;
      return true;
    };

    if (vanishes_on(*F_)) return;
    if (G_ != nullptr && vanishes_on(*G_)) return;

    c.fast = constant_on(*F_) && (G_ == nullptr || constant_on(*G_));
    if (c.fast) {
      c.wmass = w_ != nullptr ? sigma_dens_ * integrate_over(*w_, box, kSetupQuad)
                              : sigma_dens_ * box.volume();
      if (c.wmass == 0.0) return;
    }
    c.box = std::move(box);
    cells_.push_back(std::move(c));
  }

  const CylinderFunction* F_;
  const CylinderFunction* G_;
  const TestFunction* w_;
  const LevyIntensity* nu_;
  double sigma_dens_;
  double slo_ = 0.0;
  double shi_ = 0.0;
  bool to_inf_ = false;
  std::vector<double> sbreaks_;
  std::vector<Cell> cells_;
};

/// Sum over atoms of s_x (D^-_x F)(D^-_x G), sharing the removed
/// measure between the two gradients.
double death_form_draw(const CylinderFunction& F, const CylinderFunction& G,
                       const FiniteDiscreteMeasure& eta, double Fv, double Gv) {
  double acc = 0.0;
  for (const WeightedAtom& a : eta.atoms()) {
    const FiniteDiscreteMeasure minus = eta.remove_atom(a.position);
    acc += a.weight * (F(minus) - Fv) * (G(minus) - Gv);
  }
  return acc;
}

}  // namespace

double directional_birth(const CylinderFunction& F,
                         const FiniteDiscreteMeasure& eta,
                         const TestFunction& h, const LevyIntensity& nu,
                         const BaseMeasure& sigma,
                         std::optional<Interval> band) {
  const BirthQuadrature bq(BirthQuadrature::Mode::single, F, nullptr, &h, nu,
                           sigma, band, nullptr);
  if (bq.trivial()) return 0.0;
  const double t = F.inner_value(eta);
  return bq.integrate(
      [&](double dF, double) { return F.outer(t + dF) - F.outer(t); });
}

double b_functional(const FiniteDiscreteMeasure& eta, const TestFunction& h,
                    const LevyIntensity& nu, const BaseMeasure& sigma,
                    std::optional<Interval> band) {
  const double lo = std::max(nu.support_lo(), band ? band->lo : 0.0);
  const double hi =
      band ? std::min(nu.support_hi(), band->hi) : nu.support_hi();
  const double first_moment = hi > lo ? nu.moment(1, lo, hi) : 0.0;
  const Box dom = intersect(h.support(), sigma.box());
  const double h_mass =
      dom.empty() ? 0.0 : sigma.density() * integrate_over(h, dom, kSetupQuad);
  return eta.pairing(h) - first_moment * h_mass;
}

double generator_L(const CylinderFunction& F, const FiniteDiscreteMeasure& eta,
                   const LevyIntensity& nu, const BaseMeasure& sigma,
                   std::optional<Interval> band) {
  double death = 0.0;
  for (const WeightedAtom& a : eta.atoms())
    death += a.weight * death_gradient(F, eta, a.position);
  const BirthQuadrature bq(BirthQuadrature::Mode::single, F, nullptr, nullptr,
                           nu, sigma, band, nullptr);
  if (bq.trivial()) return death;
  const double t = F.inner_value(eta);
  const double birth = bq.integrate(
      [&](double dF, double) { return F.outer(t + dF) - F.outer(t); });
  return death + birth;
}

PairedCheck ibp_check(const CylinderFunction& F, const CylinderFunction& G,
                      const TestFunction& h, const PoissonWindowSampler& law,
                      long n, std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("need n > 0 draws");
  const Interval band = law.band();
  const BirthQuadrature bq(BirthQuadrature::Mode::single, G, nullptr, &h,
                           law.nu(), law.sigma(), band,
                           &law.window().lambda);

  Box dom = intersect(h.support(), law.sigma().box());
  if (!dom.empty()) dom = intersect(dom, law.window().lambda);
  const double h_mass =
      dom.empty() ? 0.0
                  : law.sigma().density() * integrate_over(h, dom, kSetupQuad);
  const double b_const = law.nu().moment(1, band.lo, band.hi) * h_mass;

  RunningStat lhs, rhs, diff;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    const double Fv = F(eta);
    const double Gv = G(eta);
    const double left = directional_death(F, eta, h) * Gv;
    const double tG = G.inner_value(eta);
    const double dhG = bq.trivial() ? 0.0
                                    : bq.integrate([&](double dG, double) {
                                        return G.outer(tG + dG) - G.outer(tG);
                                      });
    const double right = Fv * dhG - Fv * Gv * (eta.pairing(h) - b_const);
    lhs.add(left);
    rhs.add(right);
    diff.add(left - right);
  }
  return PairedCheck{lhs.estimate(), rhs.estimate(), diff.z_against(0.0)};
}

McEstimate dirichlet_death(const CylinderFunction& F, const CylinderFunction& G,
                           const PoissonWindowSampler& law, long n,
                           std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("need n > 0 draws");
  RunningStat st;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    st.add(death_form_draw(F, G, eta, F(eta), G(eta)));
  }
  return st.estimate();
}

McEstimate dirichlet_birth(const CylinderFunction& F, const CylinderFunction& G,
                           const PoissonWindowSampler& law, long n,
                           std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("need n > 0 draws");
  const BirthQuadrature bq(BirthQuadrature::Mode::product, F, &G, nullptr,
                           law.nu(), law.sigma(), law.band(),
                           &law.window().lambda);
  RunningStat st;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    if (bq.trivial()) {
      st.add(0.0);
      continue;
    }
    const double tF = F.inner_value(eta);
    const double tG = G.inner_value(eta);
    st.add(bq.integrate([&](double dF, double dG) {
      return (F.outer(tF + dF) - F.outer(tF)) * (G.outer(tG + dG) - G.outer(tG));
    }));
  }
  return st.estimate();
}

PairedCheck dirichlet_forms_check(const CylinderFunction& F,
                                  const CylinderFunction& G,
                                  const PoissonWindowSampler& law, long n,
                                  std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("need n > 0 draws");
  const BirthQuadrature bq(BirthQuadrature::Mode::product, F, &G, nullptr,
                           law.nu(), law.sigma(), law.band(),
                           &law.window().lambda);
  RunningStat lhs, rhs, diff;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    const double Fv = F(eta);
    const double Gv = G(eta);
    const double left = death_form_draw(F, G, eta, Fv, Gv);
    double right = 0.0;
    if (!bq.trivial()) {
      const double tF = F.inner_value(eta);
      const double tG = G.inner_value(eta);
      right = bq.integrate([&](double dF, double dG) {
        return (F.outer(tF + dF) - F.outer(tF)) *
               (G.outer(tG + dG) - G.outer(tG));
      });
    }
    lhs.add(left);
    rhs.add(right);
    diff.add(left - right);
  }
  return PairedCheck{lhs.estimate(), rhs.estimate(), diff.z_against(0.0)};
}

PairedCheck form_generator_check(const CylinderFunction& F,
                                 const CylinderFunction& G,
                                 const PoissonWindowSampler& law, long n,
                                 std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("need n > 0 draws");
  const BirthQuadrature bq(BirthQuadrature::Mode::single, F, nullptr, nullptr,
                           law.nu(), law.sigma(), law.band(),
                           &law.window().lambda);
  RunningStat lhs, rhs, diff;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    const FiniteDiscreteMeasure eta = law.sample(rng);
    const double Fv = F(eta);
    const double Gv = G(eta);
    double form = 0.0;
    double death = 0.0;
    for (const WeightedAtom& a : eta.atoms()) {
      const FiniteDiscreteMeasure minus = eta.remove_atom(a.position);
      const double dF = F(minus) - Fv;
      form += a.weight * dF * (G(minus) - Gv);
      death += a.weight * dF;
    }
    double birth = 0.0;
    if (!bq.trivial()) {
      const double tF = F.inner_value(eta);
      birth = bq.integrate(
          [&](double dF, double) { return F.outer(tF + dF) - F.outer(tF); });
    }
    const double right = -(death + birth) * Gv;
    lhs.add(form);
    rhs.add(right);
    diff.add(form - right);
  }
  return PairedCheck{lhs.estimate(), rhs.estimate(), diff.z_against(0.0)};
}

}  // namespace cone
