#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cone/measure.hpp"
#include "cone/test_function.hpp"

namespace cone {

/// A bounded symmetric function on X^n with compact support, from a
/// two-entry catalog: a product kernel f(x_1)...f(x_n) or an arbitrary
/// kernel symmetrized by averaging over argument permutations. Order 0
/// instances are scalars.
class SymmetricTestFunction {
 public:
  /// Order-0 kernel: the scalar `value` on the empty product X^0.
  static SymmetricTestFunction constant(double value);

  /// f^{(x)n}: the product f(x_1)...f(x_n).
  static SymmetricTestFunction product(const TestFunction& f, int n);

  /// Symmetrization (1/n!) sum over permutations pi of
  /// kernel(x_pi(1), ..., x_pi(n)).
  static SymmetricTestFunction symmetrized(
      int n, std::function<double(std::span<const Point>)> kernel,
      double sup_bound);

  int order() const { return n_; }
  double sup_bound() const { return sup_; }

  /// Value on an argument tuple; xs.size() must equal order().
  double operator()(std::span<const Point> xs) const;

 private:
  SymmetricTestFunction(int n, double sup,
                        std::function<double(std::span<const Point>)> eval)
      : n_(n), sup_(sup), eval_(std::move(eval)) {}

  int n_;
  double sup_;
  std::function<double(std::span<const Point>)> eval_;
};

/// <P^(n)(eta), fsym> = n! * sum over n-subsets {x_1..x_n} of tau(eta)
/// of s_{x_1}...s_{x_n} fsym(x_1, ..., x_n). Zero when n exceeds the
/// number of atoms; the order-0 pairing is the kernel's scalar.
double p_n_pairing(const FiniteDiscreteMeasure& eta,
                   const SymmetricTestFunction& fsym, int n);

/// <(gamma)_n, fhat^(x)n> = n! * sum over n-subsets of gamma of
/// prod fhat(s_i, x_i), the falling factorial of the configuration
/// paired with a product kernel on the marked space.
double falling_factorial_pairing(
    const MarkedConfiguration& gamma,
    const std::function<double(double, const Point&)>& fhat, int n);

/// Both sides of the binomial identity for measures with disjoint
/// supports: lhs = <P^(n)(eta + eta'), f^(x)n>, rhs = sum_k C(n,k)
/// <P^(k)(eta), f^(x)k> <P^(n-k)(eta'), f^(x)(n-k)>.
std::pair<double, double> binomial_check(const FiniteDiscreteMeasure& eta,
                                         const FiniteDiscreteMeasure& eta_prime,
                                         const TestFunction& f, int n);

/// Both sides of the lowering identity for a new point yhat = (s, x)
/// not in gamma: lhs = <(gamma + delta_yhat)_n - (gamma)_n, fhat^(x)n>,
/// rhs = n fhat(yhat) <(gamma)_{n-1}, fhat^(x)(n-1)>.
std::pair<double, double> lowering_check(
    const MarkedConfiguration& gamma, const WeightedAtom& yhat,
    const std::function<double(double, const Point&)>& fhat, int n);

/// Generating function of the falling factorials: the series
/// sum_{n=0}^{N} (1/n!) <P^(n)(eta), f^(x)n> (which terminates exactly
/// at the atom count) against the product prod_x (1 + s_x f(x)).
std::pair<double, double> generating_function_check(
    const FiniteDiscreteMeasure& eta, const TestFunction& f, int N);

/// Birth gradient of eta mapped to <P^(n)(eta), f^(x)n> in closed form:
/// n s f(x) <P^(n-1)(eta), f^(x)(n-1)>; the position must be free.
double polynomial_birth_gradient(const FiniteDiscreteMeasure& eta, double s,
                                 const Point& x, const TestFunction& f, int n);

/// Death gradient in closed form:
/// -n s_x f(x) <P^(n-1)(eta - s_x delta_x), f^(x)(n-1)>; the atom must
/// exist.
double polynomial_death_gradient(const FiniteDiscreteMeasure& eta,
                                 const Point& x, const TestFunction& f, int n);

}  // namespace cone
