#include "cone/correlation.hpp"

#include <cmath>

#include "cone/quadrature.hpp"

namespace cone {

bool BoundedSetSpec::contains(const FiniteDiscreteMeasure& xi) const {
  if (xi.support_size() < min_atoms || xi.support_size() > max_atoms)
    return false;
  for (const WeightedAtom& a : xi.atoms())
    if (!window.admits(a.weight, a.position)) return false;
  return true;
}

ConeFunction BoundedSetSpec::indicator() const {
  SupportCertificate cert{window.lambda, Interval(window.a, window.b),
                          std::nullopt};
  const BoundedSetSpec spec = *this;
  return ConeFunction(
      [spec](const FiniteDiscreteMeasure& xi) {
        return spec.contains(xi) ? 1.0 : 0.0;
      },
      std::move(cert), BoundedSupport{max_atoms, 1.0});
}

namespace {

/// Quadrature nodes on the diagonal of a tensor power carry positive
/// weight but represent off-diagonal limits of the integrand (the
/// diagonal itself is a null set). Coincident positions are therefore
/// pulled one ulp apart instead of being merged, which reproduces the
/// off-diagonal value for every catalog integrand.
FiniteDiscreteMeasure as_distinct_atoms(std::vector<WeightedAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const WeightedAtom& a, const WeightedAtom& b) {
              return a.position < b.position;
            });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    while (!(atoms[i - 1].position < atoms[i].position)) {
      std::vector<double> c = atoms[i].position.coords();
      c[0] = std::nextafter(c[0], std::numeric_limits<double>::infinity());
      atoms[i].position = Point(std::move(c));
    }
  }
  return FiniteDiscreteMeasure::from_sorted_atoms(std::move(atoms));
}

struct LpDomain {
  Box region;
  double s_lo = 0.0;
  double s_hi = 0.0;
  std::vector<double> s_breaks;
  double sigma_density = 0.0;
};

LpDomain lp_domain(const ConeFunction& G, const LevyIntensity& nu,
                   const BaseMeasure& sigma) {
  LpDomain d;
  d.region = intersect(sigma.box(), G.certificate().lambda);
  d.sigma_density = sigma.density();
  d.s_lo = nu.support_lo();
  d.s_hi = nu.support_hi();
  if (G.certificate().weight_band) {
    d.s_lo = std::max(d.s_lo, G.certificate().weight_band->lo);
    d.s_hi = std::min(d.s_hi, G.certificate().weight_band->hi);
  }
  d.s_breaks = nu.breakpoints();
  return d;
}

constexpr QuadratureOptions kLpQuad{1e-10, 1e-10, 5000};

/// (1/n!) integral of G over n-atom measures by 2n-fold nested
/// quadrature; used for n = 1 and n = 2.
double lp_term_quadrature(const ConeFunction& G, const LevyIntensity& nu,
                          const LpDomain& d, int n) {
  std::vector<WeightedAtom> atoms(static_cast<std::size_t>(n),
                                  WeightedAtom{1.0, Point{}});
  std::function<double(int)> level = [&](int k) -> double {
    if (k == n)
      return G(as_distinct_atoms(atoms));
    auto over_weight = [&](const Point& x) {
      auto integrand = [&](double s) {
        atoms[static_cast<std::size_t>(k)] = WeightedAtom{s, x};
        return level(k + 1) * nu.density(s);
      };
      if (std::isinf(d.s_hi)) return integrate_to_inf(integrand, d.s_lo, kLpQuad);
      return integrate_split(integrand, d.s_lo, d.s_hi, d.s_breaks, kLpQuad);
    };
    return d.sigma_density * integrate_over(over_weight, d.region, kLpQuad);
  };
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return level(0) / fact;
}

struct McTerm {
  double value = 0.0;
  double std_error = 0.0;
};

/// (1/n!) integral of G over n-atom measures by plain Monte Carlo with
/// atoms drawn i.i.d. from the normalized restriction of nu x sigma to
/// the domain.
McTerm lp_term_mc(const ConeFunction& G, const LevyIntensity& nu,
                  const BaseMeasure& sigma, const LpDomain& d, int n,
                  long points, std::uint64_t seed) {
  if (std::isinf(d.s_hi))
    throw SeriesNotTruncated(
        "Monte-Carlo series terms need a finite weight band; give G a "
        "weight-band certificate or a finite intensity");
  const WeightSampler weights(nu, d.s_lo, d.s_hi);
  const double mass_region = d.sigma_density * d.region.volume();
  double prefactor = 1.0;
  for (int k = 1; k <= n; ++k)
    prefactor *= weights.mass() * mass_region / static_cast<double>(k);

  RunningStat stat;
  RngStream rng(seed, static_cast<std::uint64_t>(n));
  std::vector<WeightedAtom> atoms;
  for (long i = 0; i < points; ++i) {
    atoms.clear();
    for (int k = 0; k < n; ++k) {
      Point x = sigma.sample(rng, d.region);
      atoms.push_back(WeightedAtom{weights.sample(rng), std::move(x)});
    }
    stat.add(G(as_distinct_atoms(atoms)));
  }
  return McTerm{prefactor * stat.mean(), prefactor * stat.std_error()};
}

}  // namespace

LpIntegral lp_integral(const ConeFunction& G, const LevyIntensity& nu,
                       const BaseMeasure& sigma, int n_max, long mc_points,
                       std::uint64_t mc_seed) {
  LpIntegral result;
  result.value = G(FiniteDiscreteMeasure{});
  result.terms_used = 0;

  const LpDomain d = lp_domain(G, nu, sigma);
  if (d.region.empty() || d.sigma_density == 0.0 || !(d.s_lo < d.s_hi))
    return result;

  const std::optional<BoundedSupport>& bounded = G.bounded();
  double se_sq = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    if (bounded && static_cast<std::size_t>(n) > bounded->max_atoms) break;
    double term, term_se = 0.0;
    if (n <= 2) {
      term = lp_term_quadrature(G, nu, d, n);
    } else {
      const McTerm mc = lp_term_mc(G, nu, sigma, d, n, mc_points, mc_seed);
      term = mc.value;
      term_se = mc.std_error;
    }
    result.value += term;
    se_sq += term_se * term_se;
    result.terms_used = n;
    if (!bounded && std::abs(term) < 1e-10 * std::max(1.0, std::abs(result.value))) {
      result.std_error = std::sqrt(se_sq);
      return result;
    }
  }
  result.std_error = std::sqrt(se_sq);
  if (!bounded && result.terms_used == n_max)
    throw SeriesNotTruncated(
        "Lebesgue-Poisson series did not decay below tolerance within the "
        "term budget");
  return result;
}

McEstimate correlation_measure_mc(const ConeFunction& G,
                                  const PoissonWindowSampler& law, long n,
                                  std::uint64_t seed, std::size_t cap) {
  RunningStat stat;
  for (long r = 0; r < n; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    stat.add(k_transform(G, law.sample(rng), cap));
  }
  return stat.estimate();
}

std::vector<CorrelationRatio> correlation_function_poisson_check(
    const std::vector<BoundedSetSpec>& sets, const PoissonWindowSampler& law,
    long n, std::uint64_t seed) {
  std::vector<CorrelationRatio> out;
  out.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const ConeFunction ind = sets[i].indicator();
    CorrelationRatio r;
    r.name = "bounded-set[" + std::to_string(i) + "]";
    r.measure = correlation_measure_mc(ind, law, n, seed);
    r.reference = lp_integral(ind, law.nu(), law.sigma());
    const double combined = std::hypot(r.measure.std_error, r.reference.std_error);
    r.ratio = r.reference.value != 0.0 ? r.measure.value / r.reference.value : 0.0;
    r.z = combined > 0.0 ? (r.measure.value - r.reference.value) / combined
                         : (r.measure.value == r.reference.value ? 0.0 : 1e300);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cone
