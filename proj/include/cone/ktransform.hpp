#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>

#include "cone/errors.hpp"
#include "cone/measure.hpp"
#include "cone/test_function.hpp"

namespace cone {

/// Certified support class of a function on finite discrete measures.
///
/// The function vanishes on any measure carrying an atom whose position
/// lies outside `lambda`, or whose weight lies outside `weight_band`
/// when a band is present. When `growth_constant` C is set the function
/// is additionally certified to satisfy the exponential-class bound
/// |G(xi)| <= C^{|tau(xi)|} * prod s_x on its support class.
struct SupportCertificate {
  Box lambda;
  std::optional<Interval> weight_band;
  std::optional<double> growth_constant;

  bool admits_atom(const WeightedAtom& a) const {
    if (!lambda.contains(a.position)) return false;
    return !weight_band || weight_band->contains(a.weight);
  }
};

/// Optional certificate that G vanishes beyond `max_atoms` support
/// points and is bounded by `sup_bound` in absolute value.
struct BoundedSupport {
  std::size_t max_atoms = 0;
  double sup_bound = 0.0;
};

/// Atom cap for 3-way partition enumeration (3^m terms).
inline constexpr std::size_t kStarCap = 13;

/// An evaluable function G on the finite measures K_0(X) together with
/// its support certificate. The certificate is what makes transform
/// preconditions checkable: sums over submeasures only ever need the
/// atoms the certificate admits.
class ConeFunction {
 public:
  ConeFunction(std::function<double(const FiniteDiscreteMeasure&)> evaluator,
               SupportCertificate certificate,
               std::optional<BoundedSupport> bounded = std::nullopt)
      : eval_(std::move(evaluator)),
        certificate_(std::move(certificate)),
        bounded_(bounded) {}

  /// Function with the given values on the listed measures and zero
  /// elsewhere; the natural way to build small exact test functions.
  static ConeFunction tabulated(
      std::map<FiniteDiscreteMeasure, double> values,
      SupportCertificate certificate,
      std::optional<BoundedSupport> bounded = std::nullopt) {
    auto table = std::make_shared<const std::map<FiniteDiscreteMeasure, double>>(
        std::move(values));
    return ConeFunction(
        [table](const FiniteDiscreteMeasure& xi) {
          const auto it = table->find(xi);
          return it == table->end() ? 0.0 : it->second;
        },
        std::move(certificate), bounded);
  }

  double operator()(const FiniteDiscreteMeasure& xi) const { return eval_(xi); }

  const SupportCertificate& certificate() const { return certificate_; }
  const std::optional<BoundedSupport>& bounded() const { return bounded_; }

  /// The atoms of eta the function can react to; everything else only
  /// produces vanishing submeasure terms.
  FiniteDiscreteMeasure relevant_part(const FiniteDiscreteMeasure& eta) const {
    std::vector<WeightedAtom> kept;
    for (const WeightedAtom& a : eta.atoms())
      if (certificate_.admits_atom(a)) kept.push_back(a);
    return FiniteDiscreteMeasure::from_sorted_atoms(std::move(kept));
  }

 private:
  std::function<double(const FiniteDiscreteMeasure&)> eval_;
  SupportCertificate certificate_;
  std::optional<BoundedSupport> bounded_;
};

/// K-transform (KG)(eta) = sum over submeasures xi of G(xi). The sum
/// runs over the certificate-relevant part of eta, which must stay
/// within the enumeration cap.
inline double k_transform(const ConeFunction& G, const FiniteDiscreteMeasure& eta,
                          std::size_t cap = kEnumerationCap) {
  const FiniteDiscreteMeasure visible = G.relevant_part(eta);
  double acc = 0.0;
  for (const FiniteDiscreteMeasure& xi : enumerate_submeasures(visible, cap))
    acc += G(xi);
  return acc;
}

/// Inverse transform (K^{-1}F)(eta) =
/// sum over submeasures xi of (-1)^{|tau(eta)| - |tau(xi)|} F(xi).
inline double k_inverse(
    const std::function<double(const FiniteDiscreteMeasure&)>& F,
    const FiniteDiscreteMeasure& eta, std::size_t cap = kEnumerationCap) {
  const std::size_t m = eta.support_size();
  double acc = 0.0;
  for (const FiniteDiscreteMeasure& xi : enumerate_submeasures(eta, cap)) {
    const double term = F(xi);
    acc += ((m - xi.support_size()) % 2 == 0) ? term : -term;
  }
  return acc;
}

/// Lebesgue-Poisson exponent e_K(f): eta maps to prod over atoms of
/// s_x f(x), with empty product 1. Supported on measures inside f's
/// support box; certified exponential-class with constant sup|f|.
inline ConeFunction lp_exponent(const TestFunction& f) {
  SupportCertificate cert{f.support(), std::nullopt, f.sup_bound()};
  return ConeFunction(
      [f](const FiniteDiscreteMeasure& xi) {
        double prod = 1.0;
        for (const WeightedAtom& a : xi.atoms()) prod *= a.weight * f(a.position);
        return prod;
      },
      std::move(cert));
}

/// Star convolution (G1 * G2)(eta) =
/// sum over ordered partitions xi1 + xi2 + xi3 = eta of
/// G1(xi1 + xi2) G2(xi2 + xi3), enumerated directly over the 3^m atom
/// assignments. The result's certificate is the union of the operands'.
ConeFunction star_convolution(const ConeFunction& G1, const ConeFunction& G2,
                              std::size_t cap = kStarCap);

/// Outcome of a growth-bound audit: the largest |KG(eta)| relative to
/// the certified envelope C (1 + eta(Lambda))^N over the inputs tried.
struct BoundCheckReport {
  double max_ratio = 0.0;
  std::size_t worst_index = 0;
  std::size_t trials = 0;
};

/// Checks the polynomial growth bound |KG(eta)| <= C (1 + eta(Lambda))^N
/// with C = c * max(1, 1/a)^N derived from G's certificates (c, N from
/// the bounded-support part, a from the weight band). Throws
/// BoundViolated on the first violation, which signals an inconsistent
/// certificate rather than a numerical issue.
BoundCheckReport k_bound_check(const ConeFunction& G,
                               std::span<const FiniteDiscreteMeasure> etas,
                               std::size_t cap = kEnumerationCap);

}  // namespace cone
