#include "cone/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cone/calculus.hpp"
#include "cone/correlation.hpp"
#include "cone/errors.hpp"
#include "cone/geometry.hpp"
#include "cone/intensity.hpp"
#include "cone/ktransform.hpp"
#include "cone/measure.hpp"
#include "cone/polynomials.hpp"
#include "cone/random_measures.hpp"
#include "cone/rng.hpp"
#include "cone/stats.hpp"
#include "cone/test_function.hpp"

namespace cone {
namespace {

double rel_err(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Tracks the worst instance of an exact identity.
class WorstCase {
 public:
  void add(double lhs, double rhs) {
    const double e = rel_err(lhs, rhs);
    if (count_ == 0 || e > err_) {
      err_ = e;
      lhs_ = lhs;
      rhs_ = rhs;
    }
    ++count_;
  }

  CheckResult result(std::string name, int criterion, double tol) const {
    CheckResult r;
    r.name = std::move(name);
    r.exact = true;
    r.criterion = criterion;
    r.lhs = lhs_;
    r.rhs = rhs_;
    r.statistic = err_;
    r.threshold = tol;
    r.replicates = count_;
    r.pass = err_ <= tol;
    return r;
  }

 private:
  double err_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  long count_ = 0;
};

CheckResult paired_result(std::string name, int criterion,
                          const PairedCheck& pc, double z_max) {
  CheckResult r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.lhs = pc.lhs.value;
  r.lhs_se = pc.lhs.std_error;
  r.rhs = pc.rhs.value;
  r.rhs_se = pc.rhs.std_error;
  r.statistic = std::abs(pc.z);
  r.threshold = z_max;
  r.replicates = pc.lhs.n;
  r.pass = r.statistic <= r.threshold;
  return r;
}

CheckResult reference_result(std::string name, int criterion,
                             const McEstimate& est, double reference,
                             double z_max) {
  CheckResult r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.lhs = est.value;
  r.lhs_se = est.std_error;
  r.rhs = reference;
  if (est.std_error > 0.0)
    r.statistic = std::abs(est.value - reference) / est.std_error;
  else
    r.statistic = est.value == reference
                      ? 0.0
                      : std::numeric_limits<double>::infinity();
  r.threshold = z_max;
  r.replicates = est.n;
  r.pass = r.statistic <= r.threshold;
  return r;
}

CheckResult nonnegative_result(std::string name, int criterion,
                               const McEstimate& est, double z_max) {
  CheckResult r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.lhs = est.value;
  r.lhs_se = est.std_error;
  r.rhs = 0.0;
  if (est.std_error > 0.0)
    r.statistic = std::max(0.0, -est.value) / est.std_error;
  else
    r.statistic =
        est.value >= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  r.threshold = z_max;
  r.replicates = est.n;
  r.pass = r.statistic <= r.threshold;
  return r;
}

FiniteDiscreteMeasure fixed_count_measure(RngStream& rng, std::size_t m,
                                          const Box& box) {
  FiniteDiscreteMeasure eta;
  while (eta.support_size() < m) {
    const Point x = sample_point(rng, box);
    if (eta.has_atom_at(x)) continue;
    eta = eta.add_atom(rng.uniform(0.1, 10.0), x);
  }
  return eta;
}

FiniteDiscreteMeasure random_measure(RngStream& rng, std::size_t max_atoms,
                                     const Box& box) {
  return fixed_count_measure(rng, rng.next_u64() % (max_atoms + 1), box);
}

/// Rotating catalog of position test functions on [0, 1].
TestFunction random_position_function(RngStream& rng, int kind, double amp) {
  switch (kind & 3) {
    case 0: {
      const double lo = rng.uniform(0.0, 0.5);
      const double hi = rng.uniform(lo + 0.2, 1.0);
      return TestFunction::indicator(Box({Interval(lo, hi)}),
                                     rng.uniform(-amp, amp));
    }
    case 1: {
      std::vector<double> values(4);
      for (double& v : values) v = rng.uniform(-amp, amp);
      return TestFunction::piecewise_constant(Interval(0.0, 1.0),
                                              std::move(values));
    }
    case 2: {
      std::vector<double> coeffs(3);
      for (double& c : coeffs) c = rng.uniform(-amp / 3.0, amp / 3.0);
      return TestFunction::polynomial(Interval(0.0, 1.0), std::move(coeffs));
    }
    default: {
      const double lo = rng.uniform(0.0, 0.4);
      const double hi = rng.uniform(lo + 0.3, 1.0);
      return TestFunction::bump(Box({Interval(lo, hi)}),
                                rng.uniform(-amp, amp));
    }
  }
}

// Subset-sum transforms over the mask lattice of an atom list; an
// independent oracle for sums over submeasures.
std::vector<double> zeta_transform(std::vector<double> v, std::size_t m) {
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t mask = 0; mask < v.size(); ++mask)
      if (mask & (std::size_t{1} << b))
        v[mask] += v[mask ^ (std::size_t{1} << b)];
  return v;
}

std::vector<double> moebius_transform(std::vector<double> v, std::size_t m) {
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t mask = 0; mask < v.size(); ++mask)
      if (mask & (std::size_t{1} << b))
        v[mask] -= v[mask ^ (std::size_t{1} << b)];
  return v;
}

std::size_t mask_of(const FiniteDiscreteMeasure& xi,
                    const std::vector<WeightedAtom>& atoms) {
  std::size_t mask = 0;
  std::size_t j = 0;
  for (const WeightedAtom& a : xi.atoms()) {
    while (j < atoms.size() && (atoms[j].position != a.position ||
                                atoms[j].weight != a.weight))
      ++j;
    mask |= std::size_t{1} << j;
    ++j;
  }
  return mask;
}

const SupportCertificate& suite_certificate() {
  static const SupportCertificate cert{Box::unit(1), Interval(0.05, 10.5),
                                       std::nullopt};
  return cert;
}

/// G(xi) read off a per-mask value table over the atoms of one measure.
ConeFunction mask_function(std::vector<double> values,
                           std::vector<WeightedAtom> atoms) {
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  const std::size_t m = atoms.size();
  return ConeFunction(
      [values = std::move(values),
       atoms = std::move(atoms)](const FiniteDiscreteMeasure& xi) {
        return values[mask_of(xi, atoms)];
      },
      suite_certificate(), BoundedSupport{m, sup});
}

ConeFunction tabulated_on(RngStream& rng, const FiniteDiscreteMeasure& eta) {
  std::map<FiniteDiscreteMeasure, double> table;
  double sup = 0.0;
  for (const FiniteDiscreteMeasure& xi : enumerate_submeasures(eta)) {
    const double v = rng.uniform(-1.0, 1.0);
    sup = std::max(sup, std::abs(v));
    table.emplace(xi, v);
  }
  return ConeFunction::tabulated(std::move(table), suite_certificate(),
                                 BoundedSupport{eta.support_size(), sup});
}

void transform_inversion_checks(const SuiteOptions& opts,
                                std::vector<CheckResult>& out) {
  WorstCase forward, left, right;
  for (int i = 0; i < opts.instances; ++i) {
    RngStream rng(opts.seed, 1000 + static_cast<std::uint64_t>(i));
    const std::size_t m = rng.next_u64() % 13;
    const FiniteDiscreteMeasure eta = fixed_count_measure(rng, m, Box::unit(1));
    std::vector<double> values(std::size_t{1} << m);
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    const std::vector<double> summed = zeta_transform(values, m);

    forward.add(k_transform(mask_function(values, eta.atoms()), eta),
                summed.back());

    const std::vector<WeightedAtom> atoms = eta.atoms();
    left.add(k_inverse(
                 [&](const FiniteDiscreteMeasure& xi) {
                   return summed[mask_of(xi, atoms)];
                 },
                 eta),
             values.back());

    right.add(k_transform(mask_function(moebius_transform(values, m),
                                        eta.atoms()),
                          eta),
              values.back());
  }
  out.push_back(
      forward.result("k_transform.subset_sum_oracle", 1, opts.exact_tol));
  out.push_back(
      left.result("k_inverse.recovers_summand", 1, opts.exact_tol));
  out.push_back(
      right.result("k_transform.inverts_moebius", 1, opts.exact_tol));
}

void star_homomorphism_checks(const SuiteOptions& opts,
                              std::vector<CheckResult>& out) {
  WorstCase hom;
  for (int i = 0; i < opts.instances; ++i) {
    RngStream rng(opts.seed, 2000 + static_cast<std::uint64_t>(i));
    const std::size_t m = rng.next_u64() % 11;
    const FiniteDiscreteMeasure eta = fixed_count_measure(rng, m, Box::unit(1));
    const int mode = i % 3;
    const ConeFunction g1 =
        mode == 0 ? lp_exponent(random_position_function(rng, i % 4, 0.05))
                  : tabulated_on(rng, eta);
    const ConeFunction g2 =
        mode == 2
            ? tabulated_on(rng, eta)
            : lp_exponent(random_position_function(rng, (i + 1) % 4, 0.05));
    hom.add(k_transform(star_convolution(g1, g2), eta),
            k_transform(g1, eta) * k_transform(g2, eta));
  }
  out.push_back(
      hom.result("star_convolution.k_homomorphism", 2, opts.exact_tol));
}

void lp_product_checks(const SuiteOptions& opts,
                       std::vector<CheckResult>& out) {
  WorstCase prod;
  for (int i = 0; i < opts.instances; ++i) {
    RngStream rng(opts.seed, 3000 + static_cast<std::uint64_t>(i));
    const std::size_t m = rng.next_u64() % 13;
    const FiniteDiscreteMeasure eta = fixed_count_measure(rng, m, Box::unit(1));
    const TestFunction f = random_position_function(rng, i % 4, 0.05);
    double product = 1.0;
    for (const WeightedAtom& a : eta.atoms())
      product *= 1.0 + a.weight * f(a.position);
    prod.add(k_transform(lp_exponent(f), eta), product);
  }
  out.push_back(
      prod.result("lp_exponent.k_product_form", 3, opts.exact_tol));
}

void growth_bound_checks(const SuiteOptions& opts,
                         std::vector<CheckResult>& out) {
  const Box inner({Interval(0.15, 0.85)});
  double worst_ratio = 0.0;
  long trials = 0;
  bool violated = false;
  for (int v = 0; v < 3; ++v) {
    RngStream rng(opts.seed, 4000 + static_cast<std::uint64_t>(v));
    const double a = v == 0 ? 0.3 : v == 1 ? 0.5 : 2.0;
    const Window w(inner, a, a + 6.0);
    const std::size_t cap_atoms = 1 + static_cast<std::size_t>(v);
    const double c = rng.uniform(0.5, 3.0);
    const double omega = rng.uniform(0.5, 4.0);
    const ConeFunction G(
        [w, cap_atoms, c, omega](const FiniteDiscreteMeasure& xi) {
          if (xi.support_size() > cap_atoms) return 0.0;
          double t = 0.0;
          for (const WeightedAtom& at : xi.atoms()) {
            if (!w.admits(at.weight, at.position)) return 0.0;
            t += at.weight;
          }
          return c * std::cos(omega * t);
        },
        SupportCertificate{inner, Interval(w.a, w.b), std::nullopt},
        BoundedSupport{cap_atoms, c});
    std::vector<FiniteDiscreteMeasure> etas;
    etas.reserve(static_cast<std::size_t>(opts.instances));
    for (int i = 0; i < opts.instances; ++i)
      etas.push_back(random_measure(rng, 12, Box::unit(1)));
    try {
      const BoundCheckReport rep = k_bound_check(G, etas);
      worst_ratio = std::max(worst_ratio, rep.max_ratio);
      trials += static_cast<long>(rep.trials);
    } catch (const BoundViolated&) {
      violated = true;
    }
  }
  CheckResult env;
  env.name = "k_transform.growth_envelope";
  env.exact = true;
  env.criterion = 5;
  env.lhs = violated ? std::numeric_limits<double>::infinity() : worst_ratio;
  env.rhs = 1.0;
  env.statistic = env.lhs;
  env.threshold = 1.0 + 1e-12;
  env.replicates = trials;
  env.pass = !violated && env.statistic <= env.threshold;
  out.push_back(env);

  RngStream rng(opts.seed, 4100);
  double worst = -std::numeric_limits<double>::infinity();
  double worst_count = 0.0;
  double worst_budget = 0.0;
  for (int i = 0; i < opts.instances; ++i) {
    const FiniteDiscreteMeasure eta = random_measure(rng, 12, Box::unit(1));
    const double a = rng.uniform(0.2, 1.0);
    const double b = a + rng.uniform(0.5, 8.0);
    const double lo = rng.uniform(0.0, 0.3);
    const Window w(Box({Interval(lo, rng.uniform(0.5, 1.0))}), a, b);
    const double count =
        static_cast<double>(eta.project(w).support_size());
    const double budget = eta.mass(w.lambda) / a;
    if (count - budget > worst) {
      worst = count - budget;
      worst_count = count;
      worst_budget = budget;
    }
  }
  CheckResult card;
  card.name = "window_projection.atom_count_bound";
  card.exact = true;
  card.criterion = 5;
  card.lhs = worst_count;
  card.rhs = worst_budget;
  card.statistic = std::max(0.0, worst);
  card.threshold = opts.exact_tol;
  card.replicates = opts.instances;
  card.pass = card.statistic <= card.threshold;
  out.push_back(card);
}

void polynomial_checks(const SuiteOptions& opts,
                       std::vector<CheckResult>& out) {
  WorstCase oracle, binom, lower, gener, birth, death, cross;
  double bound_worst = -std::numeric_limits<double>::infinity();
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  const Box unit = Box::unit(1);
  for (int i = 0; i < opts.instances; ++i) {
    RngStream rng(opts.seed, 5000 + static_cast<std::uint64_t>(i));
    const TestFunction f = random_position_function(rng, i % 4, 0.2);

    {
      // orders 2 and 3 against Newton's power sums
      const FiniteDiscreteMeasure eta = random_measure(rng, 12, unit);
      double p1 = 0.0, p2 = 0.0, p3 = 0.0;
      for (const WeightedAtom& a : eta.atoms()) {
        const double t = a.weight * f(a.position);
        p1 += t;
        p2 += t * t;
        p3 += t * t * t;
      }
      oracle.add(p_n_pairing(eta, SymmetricTestFunction::product(f, 2), 2),
                 p1 * p1 - p2);
      oracle.add(p_n_pairing(eta, SymmetricTestFunction::product(f, 3), 3),
                 p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3);
    }

    {
      const FiniteDiscreteMeasure eta = random_measure(rng, 5, unit);
      FiniteDiscreteMeasure etap;
      const std::size_t mp = rng.next_u64() % 6;
      while (etap.support_size() < mp) {
        const Point x = sample_point(rng, unit);
        if (eta.has_atom_at(x) || etap.has_atom_at(x)) continue;
        etap = etap.add_atom(rng.uniform(0.1, 10.0), x);
      }
      const auto [lhs, rhs] = binomial_check(eta, etap, f, i % 6);
      binom.add(lhs, rhs);
    }

    {
      const FiniteDiscreteMeasure base = random_measure(rng, 9, unit);
      Point y = sample_point(rng, unit);
      while (base.has_atom_at(y)) y = sample_point(rng, unit);
      const WeightedAtom yhat{rng.uniform(0.1, 10.0), y};
      const auto fhat = [&f](double s, const Point& x) { return s * f(x); };
      const auto [lhs, rhs] =
          lowering_check(to_configuration(base), yhat, fhat, 1 + i % 5);
      lower.add(lhs, rhs);
    }

    {
      const FiniteDiscreteMeasure eta = random_measure(rng, 10, unit);
      const auto [series, product] = generating_function_check(
          eta, f, static_cast<int>(eta.support_size()));
      gener.add(series, product);
    }

    {
      const FiniteDiscreteMeasure eta = random_measure(rng, 8, unit);
      const int n = 1 + i % 5;
      const SymmetricTestFunction fn = SymmetricTestFunction::product(f, n);
      Point x = sample_point(rng, unit);
      while (eta.has_atom_at(x)) x = sample_point(rng, unit);
      const double s = rng.uniform(0.1, 10.0);
      birth.add(polynomial_birth_gradient(eta, s, x, f, n),
                p_n_pairing(eta.add_atom(s, x), fn, n) -
                    p_n_pairing(eta, fn, n));
      if (!eta.is_zero()) {
        const Point& xa =
            eta.atoms()[rng.next_u64() % eta.support_size()].position;
        death.add(polynomial_death_gradient(eta, xa, f, n),
                  p_n_pairing(eta.remove_atom(xa), fn, n) -
                      p_n_pairing(eta, fn, n));
      }
    }

    {
      const FiniteDiscreteMeasure eta = random_measure(rng, 10, unit);
      const int n = i % 4;
      cross.add(p_n_pairing(eta, SymmetricTestFunction::product(f, n), n),
                falling_factorial_pairing(
                    to_configuration(eta),
                    [&f](double s, const Point& x) { return s * f(x); }, n));
    }

    {
      const FiniteDiscreteMeasure eta = random_measure(rng, 10, unit);
      const int n = 1 + i % 4;
      const double p =
          p_n_pairing(eta, SymmetricTestFunction::product(f, n), n);
      const double cap = std::pow(
          eta.pairing([&f](const Point& x) { return std::abs(f(x)); }), n);
      const double viol = (std::abs(p) - cap) / std::max(1.0, cap);
      if (viol > bound_worst) {
        bound_worst = viol;
        bound_lhs = std::abs(p);
        bound_rhs = cap;
      }
    }
  }
  out.push_back(
      oracle.result("p_n_pairing.power_sum_oracle", 4, opts.exact_tol));
  out.push_back(
      binom.result("binomial_identity.disjoint_sum", 4, opts.exact_tol));
  out.push_back(
      lower.result("falling_factorial.lowering_identity", 4, opts.exact_tol));
  out.push_back(gener.result("falling_factorial.generating_function", 4,
                             opts.exact_tol));
  out.push_back(
      birth.result("polynomial_birth_gradient.closed_form", 4, opts.exact_tol));
  out.push_back(
      death.result("polynomial_death_gradient.closed_form", 4, opts.exact_tol));
  out.push_back(
      cross.result("p_n_pairing.marked_representation", 4, opts.exact_tol));

  CheckResult bound;
  bound.name = "p_n_pairing.norm_bound";
  bound.exact = true;
  bound.criterion = 4;
  bound.lhs = bound_lhs;
  bound.rhs = bound_rhs;
  bound.statistic = std::max(0.0, bound_worst);
  bound.threshold = opts.exact_tol;
  bound.replicates = opts.instances;
  bound.pass = bound.statistic <= bound.threshold;
  out.push_back(bound);
}

void count_law_checks(const SuiteOptions& opts,
                      std::vector<CheckResult>& out) {
  const PoissonWindowSampler law(LevyIntensity::gamma(1.0),
                                 BaseMeasure(Box::unit(1), 1.0),
                                 Window(Box::unit(1), 0.5, 2.0));
  const CountLawReport rep =
      count_law_check(law, opts.replicates, opts.seed + 6001);

  out.push_back(
      reference_result("count_law.mean", 6, rep.mean, rep.reference,
                       opts.z_max));

  CheckResult var;
  var.name = "count_law.variance";
  var.criterion = 6;
  var.lhs = rep.variance;
  var.lhs_se = rep.variance_se;
  var.rhs = rep.reference;
  var.statistic = std::abs(rep.z_variance);
  var.threshold = opts.z_max;
  var.replicates = opts.replicates;
  var.pass = var.statistic <= var.threshold;
  out.push_back(var);

  CheckResult chi;
  chi.name = "count_law.poisson_chi_square";
  chi.criterion = 6;
  chi.lhs = rep.chi_square;
  chi.rhs = rep.chi_square_dof;
  chi.statistic = 1.0 - rep.p_value;
  chi.threshold = 1.0 - 1e-6;
  chi.replicates = opts.replicates;
  chi.pass = chi.statistic <= chi.threshold;
  out.push_back(chi);
}

void mecke_checks(const SuiteOptions& opts, std::vector<CheckResult>& out) {
  const Box unit = Box::unit(1);
  const GammaConeSampler gamma(1.0, BaseMeasure(unit, 1.0), unit, 1e-6);
  const PoissonWindowSampler& law = gamma.window_sampler();
  const double inf = std::numeric_limits<double>::infinity();
  const double first = law.nu().moment(1, 0.0, inf) * law.sigma_mass();
  const double second = law.nu().moment(2, 0.0, inf) * law.sigma_mass();

  const auto indicator = [&unit](const FiniteDiscreteMeasure&, double,
                                 const Point& x) {
    return unit.contains(x) ? 1.0 : 0.0;
  };
  const PairedCheck c1 =
      mecke_check(indicator, law, opts.replicates, opts.seed + 7001);
  out.push_back(paired_result("mecke.position_indicator", 7, c1, opts.z_max));
  out.push_back(reference_result("mecke.position_indicator.first_moment", 7,
                                 c1.lhs, first, opts.z_max));

  const auto weighted = [&unit](const FiniteDiscreteMeasure&, double s,
                                const Point& x) {
    return unit.contains(x) ? s : 0.0;
  };
  const PairedCheck c2 =
      mecke_check(weighted, law, opts.replicates, opts.seed + 7002);
  out.push_back(paired_result("mecke.weighted_indicator", 7, c2, opts.z_max));
  out.push_back(reference_result("mecke.weighted_indicator.second_moment", 7,
                                 c2.lhs, second, opts.z_max));

  const auto saturated = [&unit](const FiniteDiscreteMeasure& eta, double,
                                 const Point& x) {
    return unit.contains(x) ? std::tanh(eta.mass(unit)) : 0.0;
  };
  const PairedCheck c3 =
      mecke_check(saturated, law, opts.replicates, opts.seed + 7003);
  out.push_back(paired_result("mecke.saturated_mass", 7, c3, opts.z_max));
}

void laplace_checks(const SuiteOptions& opts, std::vector<CheckResult>& out) {
  const Box unit = Box::unit(1);
  const BaseMeasure sigma(unit, 1.0);
  const TestFunction f = TestFunction::indicator(unit);

  const GammaConeSampler gamma(1.0, sigma, unit, 1e-6);
  const double closed = laplace_gamma_closed_form(f, 1.0, sigma);
  const McEstimate mc = laplace_transform_mc(
      f, gamma.window_sampler(), opts.replicates, opts.seed + 8001);
  out.push_back(
      reference_result("laplace.gamma_closed_form", 8, mc, closed,
                       opts.z_max));

  WorstCase quad;
  quad.add(laplace_transform_exact(f, LevyIntensity::gamma(1.0), sigma),
           closed);
  out.push_back(
      quad.result("laplace.gamma_quadrature", 8, opts.quadrature_tol));

  const LevyIntensity flat = LevyIntensity::truncated_uniform(1.0, 2.0, 1.0);
  const PoissonWindowSampler law(flat, sigma, Window(unit, 1.0, 2.0));
  const double exact =
      laplace_transform_exact(f, flat, sigma, Interval(1.0, 2.0));
  const McEstimate fmc =
      laplace_transform_mc(f, law, opts.replicates, opts.seed + 8002);
  out.push_back(reference_result("laplace.uniform_quadrature_reference", 8,
                                 fmc, exact, opts.z_max));
}

void moment_checks(const SuiteOptions& opts, std::vector<CheckResult>& out) {
  const Box unit = Box::unit(1);
  const BaseMeasure sigma(unit, 1.0);
  const LevyIntensity nu = LevyIntensity::gamma(1.0);

  WorstCase closed;
  const double refs[3] = {1.0, 2.0, 6.0};
  for (int n = 1; n <= 3; ++n)
    closed.add(moment_exact(n, unit, nu, sigma), refs[n - 1]);
  out.push_back(closed.result("moment.composition_closed_form", 9,
                              opts.quadrature_tol));

  const PoissonWindowSampler law(nu, sigma, Window(unit, 0.5, 2.0));
  const Interval band(0.5, 2.0);
  for (int n = 1; n <= 3; ++n) {
    const McEstimate mc = moment_mc(n, unit, law, opts.replicates,
                                    opts.seed + 9000 +
                                        static_cast<std::uint64_t>(n));
    out.push_back(reference_result(
        "moment.windowed_order_" + std::to_string(n), 9, mc,
        moment_exact(n, unit, nu, sigma, band), opts.z_max));
  }
}

}  // namespace

std::vector<CheckResult> suite_ktransform(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  transform_inversion_checks(opts, out);
  star_homomorphism_checks(opts, out);
  lp_product_checks(opts, out);
  growth_bound_checks(opts, out);
  return out;
}

std::vector<CheckResult> suite_polynomials(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  polynomial_checks(opts, out);
  return out;
}

std::vector<CheckResult> suite_mecke(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  count_law_checks(opts, out);
  mecke_checks(opts, out);
  laplace_checks(opts, out);
  moment_checks(opts, out);
  return out;
}

std::vector<CheckResult> suite_correlation(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Box unit = Box::unit(1);
  const BaseMeasure sigma(unit, 1.0);
  const LevyIntensity nu = LevyIntensity::truncated_uniform(1.0, 2.0, 1.0);
  const PoissonWindowSampler law(nu, sigma, Window(unit, 1.0, 2.0));

  const Window full(unit, 1.0, 2.0);
  const Window sub(Box({Interval(0.0, 0.5)}), 1.25, 1.75);
  const std::vector<BoundedSetSpec> sets = {{full, 1, 1},
                                            {full, 2, 2},
                                            {full, 3, 3},
                                            {full, 2, 0},
                                            {sub, 1, 1}};
  const char* names[] = {"correlation.single_atom", "correlation.atom_pair",
                         "correlation.atom_triple", "correlation.at_most_two",
                         "correlation.sub_window_atom"};
  const auto ratios = correlation_function_poisson_check(
      sets, law, opts.replicates, opts.seed + 10001);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    CheckResult r;
    r.name = names[i];
    r.criterion = 10;
    r.lhs = ratios[i].measure.value;
    r.lhs_se = ratios[i].measure.std_error;
    r.rhs = ratios[i].reference.value;
    r.rhs_se = ratios[i].reference.std_error;
    r.statistic = std::abs(ratios[i].z);
    r.threshold = opts.z_max;
    r.replicates = opts.replicates;
    r.pass = r.statistic <= r.threshold;
    out.push_back(std::move(r));
  }

  const TestFunction step =
      TestFunction::indicator(Box({Interval(0.2, 0.7)}), 0.3);
  const TestFunction smooth = TestFunction::bump(Box({Interval(0.1, 0.9)}), 0.5);
  int idx = 0;
  for (const TestFunction* f : {&step, &smooth}) {
    const ConeFunction G = lp_exponent(*f);
    const McEstimate mc = correlation_measure_mc(
        G, law, opts.replicates,
        opts.seed + 10100 + static_cast<std::uint64_t>(idx));
    const LpIntegral ref = lp_integral(G, nu, sigma);
    const double combined = std::sqrt(mc.std_error * mc.std_error +
                                      ref.std_error * ref.std_error);
    CheckResult r;
    r.name = idx == 0 ? "correlation.lp_exponent_step"
                      : "correlation.lp_exponent_bump";
    r.criterion = 10;
    r.lhs = mc.value;
    r.lhs_se = mc.std_error;
    r.rhs = ref.value;
    r.rhs_se = ref.std_error;
    r.statistic = combined > 0.0 ? std::abs(mc.value - ref.value) / combined
                                 : 0.0;
    r.threshold = opts.z_max;
    r.replicates = opts.replicates;
    r.pass = r.statistic <= r.threshold;
    out.push_back(std::move(r));
    ++idx;
  }
  return out;
}

std::vector<CheckResult> suite_calculus(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const Box unit = Box::unit(1);
  const PoissonWindowSampler law(LevyIntensity::gamma(1.0),
                                 BaseMeasure(unit, 1.0),
                                 Window(unit, 0.001, 30.0));

  const CylinderFunction F_tanh = CylinderFunction::tanh_linear(
      {{1.0, MarkedTestFunction::weighted_position(
                 TestFunction::indicator(unit))}});
  const CylinderFunction F_gauss = CylinderFunction::gaussian(
      {{1.0, MarkedTestFunction::box_indicator(Interval(0.8, 1.8),
                                               Box({Interval(0.0, 0.6)}))}});
  const CylinderFunction F_poly = CylinderFunction::polynomial(
      {{0.25, MarkedTestFunction::weighted_position(
                  TestFunction::indicator(unit))}},
      {0.0, 1.0}, 8.0);

  const long n = opts.replicates;
  out.push_back(paired_result(
      "dirichlet.death_birth.tanh_gauss", 11,
      dirichlet_forms_check(F_tanh, F_gauss, law, n, opts.seed + 11001),
      opts.z_max));
  out.push_back(paired_result(
      "dirichlet.death_birth.tanh_poly", 11,
      dirichlet_forms_check(F_tanh, F_poly, law, n, opts.seed + 11002),
      opts.z_max));
  out.push_back(paired_result(
      "dirichlet.generator_duality.tanh_gauss", 11,
      form_generator_check(F_tanh, F_gauss, law, n, opts.seed + 11003),
      opts.z_max));
  out.push_back(paired_result(
      "dirichlet.generator_duality.poly_tanh", 11,
      form_generator_check(F_poly, F_tanh, law, n, opts.seed + 11004),
      opts.z_max));

  const TestFunction h_flat = TestFunction::indicator(unit);
  const TestFunction h_bump = TestFunction::bump(Box({Interval(0.1, 0.9)}), 1.0);
  out.push_back(paired_result(
      "ibp.boundary_term.flat_direction", 11,
      ibp_check(F_tanh, F_gauss, h_flat, law, n, opts.seed + 11005),
      opts.z_max));
  out.push_back(paired_result(
      "ibp.boundary_term.bump_direction", 11,
      ibp_check(F_gauss, F_poly, h_bump, law, n, opts.seed + 11006),
      opts.z_max));

  out.push_back(nonnegative_result(
      "dirichlet.death_nonnegative.diagonal", 11,
      dirichlet_death(F_tanh, F_tanh, law, n, opts.seed + 11007),
      opts.z_max));
  out.push_back(nonnegative_result(
      "dirichlet.birth_nonnegative.diagonal", 11,
      dirichlet_birth(F_tanh, F_tanh, law, n, opts.seed + 11008),
      opts.z_max));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "ktransform", "polynomials", "mecke", "correlation", "calculus"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& selector,
                                   const SuiteOptions& opts) {
  if (opts.instances < 1 || opts.replicates < 1)
    throw ConfigError("suite options need positive instances and replicates");
  if (selector == "ktransform") return suite_ktransform(opts);
  if (selector == "polynomials") return suite_polynomials(opts);
  if (selector == "mecke") return suite_mecke(opts);
  if (selector == "correlation") return suite_correlation(opts);
  if (selector == "calculus") return suite_calculus(opts);
  if (selector == "all") {
    std::vector<CheckResult> all;
    for (const std::string& name : suite_names()) {
      std::vector<CheckResult> part = run_suite(name, opts);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw ConfigError("suite: unknown selector '" + selector + "'");
}

}  // namespace cone
