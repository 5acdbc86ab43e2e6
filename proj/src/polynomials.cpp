#include "cone/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cone/errors.hpp"

namespace cone {

namespace {

/// Runs body(idx) for every size-n index subset of {0..m-1} in
/// lexicographic order.
template <class Body>
void for_each_subset(std::size_t m, std::size_t n, Body&& body) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    body(idx);
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) return;
    --k;
    ++idx[k];
    for (std::size_t j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

SymmetricTestFunction SymmetricTestFunction::constant(double value) {
  return SymmetricTestFunction(
      0, std::abs(value),
      [value](std::span<const Point>) { return value; });
}

SymmetricTestFunction SymmetricTestFunction::product(const TestFunction& f,
                                                     int n) {
  if (n < 0) throw InvalidArgument("kernel order must be >= 0");
  const double sup = std::pow(f.sup_bound(), n);
  return SymmetricTestFunction(n, sup, [f](std::span<const Point> xs) {
    double v = 1.0;
    for (const Point& x : xs) v *= f(x);
    return v;
  });
}

SymmetricTestFunction SymmetricTestFunction::symmetrized(
    int n, std::function<double(std::span<const Point>)> kernel,
    double sup_bound) {
  if (n < 0) throw InvalidArgument("kernel order must be >= 0");
  if (n <= 1) return SymmetricTestFunction(n, sup_bound, std::move(kernel));
  auto eval = [n, kernel = std::move(kernel)](std::span<const Point> xs) {
    std::vector<std::size_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Point> buf(static_cast<std::size_t>(n));
    double acc = 0.0;
    double count = 0.0;
    do {
      for (std::size_t i = 0; i < perm.size(); ++i) buf[i] = xs[perm[i]];
      acc += kernel(buf);
      count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / count;
  };
  return SymmetricTestFunction(n, sup_bound, std::move(eval));
}

double SymmetricTestFunction::operator()(std::span<const Point> xs) const {
  if (xs.size() != static_cast<std::size_t>(n_))
    throw InvalidArgument("argument tuple size does not match kernel order");
  return eval_(xs);
}

double p_n_pairing(const FiniteDiscreteMeasure& eta,
                   const SymmetricTestFunction& fsym, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  if (n != fsym.order())
    throw InvalidArgument("kernel order does not match the requested n");
  const std::size_t m = eta.support_size();
  if (m > kEnumerationCap)
    throw TooManyAtoms("subset sum over " + std::to_string(m) +
                       " atoms exceeds cap " + std::to_string(kEnumerationCap));
  if (n == 0) return fsym(std::span<const Point>{});
  const auto un = static_cast<std::size_t>(n);
  if (un > m) return 0.0;

  const std::vector<WeightedAtom>& atoms = eta.atoms();
  std::vector<Point> pts(un);
  double total = 0.0;
  for_each_subset(m, un, [&](const std::vector<std::size_t>& idx) {
    double w = 1.0;
    for (std::size_t i = 0; i < un; ++i) {
      w *= atoms[idx[i]].weight;
      pts[i] = atoms[idx[i]].position;
    }
    total += w * fsym(pts);
  });
  return factorial(n) * total;
}

double falling_factorial_pairing(
    const MarkedConfiguration& gamma,
    const std::function<double(double, const Point&)>& fhat, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  const std::size_t m = gamma.size();
  if (m > kEnumerationCap)
    throw TooManyAtoms("subset sum over " + std::to_string(m) +
                       " points exceeds cap " + std::to_string(kEnumerationCap));
  if (n == 0) return 1.0;
  const auto un = static_cast<std::size_t>(n);
  if (un > m) return 0.0;

  const std::vector<WeightedAtom>& pts = gamma.points();
  double total = 0.0;
  for_each_subset(m, un, [&](const std::vector<std::size_t>& idx) {
    double v = 1.0;
    for (std::size_t i : idx) v *= fhat(pts[i].weight, pts[i].position);
    total += v;
  });
  return factorial(n) * total;
}

std::pair<double, double> binomial_check(const FiniteDiscreteMeasure& eta,
                                         const FiniteDiscreteMeasure& eta_prime,
                                         const TestFunction& f, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  const FiniteDiscreteMeasure sum = eta.disjoint_sum(eta_prime);
  const double lhs = p_n_pairing(sum, SymmetricTestFunction::product(f, n), n);

  double rhs = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    rhs += binom *
           p_n_pairing(eta, SymmetricTestFunction::product(f, k), k) *
           p_n_pairing(eta_prime, SymmetricTestFunction::product(f, n - k),
                       n - k);
    binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return {lhs, rhs};
}

std::pair<double, double> lowering_check(
    const MarkedConfiguration& gamma, const WeightedAtom& yhat,
    const std::function<double(double, const Point&)>& fhat, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  const MarkedConfiguration grown = gamma.add_point(yhat.weight, yhat.position);
  const double lhs = falling_factorial_pairing(grown, fhat, n) -
                     falling_factorial_pairing(gamma, fhat, n);
  const double rhs =
      n == 0 ? 0.0
             : static_cast<double>(n) * fhat(yhat.weight, yhat.position) *
                   falling_factorial_pairing(gamma, fhat, n - 1);
  return {lhs, rhs};
}

std::pair<double, double> generating_function_check(
    const FiniteDiscreteMeasure& eta, const TestFunction& f, int N) {
  if (N < 0) throw InvalidArgument("series order must be >= 0");
  const int stop = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(N), eta.support_size()));
  double series = 0.0;
  double nfact = 1.0;
  for (int k = 0; k <= stop; ++k) {
    if (k > 0) nfact *= k;
    const SymmetricTestFunction fk =
        k == 0 ? SymmetricTestFunction::constant(1.0)
               : SymmetricTestFunction::product(f, k);
    series += p_n_pairing(eta, fk, k) / nfact;
  }
  double prod = 1.0;
  for (const WeightedAtom& a : eta.atoms()) prod *= 1.0 + a.weight * f(a.position);
  return {series, prod};
}

double polynomial_birth_gradient(const FiniteDiscreteMeasure& eta, double s,
                                 const Point& x, const TestFunction& f, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  if (!(s > 0.0) || !std::isfinite(s))
    throw NonpositiveWeight("atom weight must be finite and > 0");
  if (eta.has_atom_at(x))
    throw PositionOccupied("position already carries an atom");
  if (n == 0) return 0.0;
  return static_cast<double>(n) * s * f(x) *
         p_n_pairing(eta, SymmetricTestFunction::product(f, n - 1), n - 1);
}

double polynomial_death_gradient(const FiniteDiscreteMeasure& eta,
                                 const Point& x, const TestFunction& f, int n) {
  if (n < 0) throw InvalidArgument("polynomial order must be >= 0");
  const double sx = eta.weight_at(x);
  if (n == 0) return 0.0;
  return -static_cast<double>(n) * sx * f(x) *
         p_n_pairing(eta.remove_atom(x),
                     SymmetricTestFunction::product(f, n - 1), n - 1);
}

}  // namespace cone
