#include "cone/ktransform.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace cone {

namespace {

SupportCertificate union_certificate(const SupportCertificate& c1,
                                     const SupportCertificate& c2) {
  SupportCertificate out;
  out.lambda = hull(c1.lambda, c2.lambda);
  if (c1.weight_band && c2.weight_band) {
    out.weight_band = Interval(std::min(c1.weight_band->lo, c2.weight_band->lo),
                               std::max(c1.weight_band->hi, c2.weight_band->hi));
  }
  return out;
}

std::optional<BoundedSupport> star_bounded(
    const std::optional<BoundedSupport>& b1,
    const std::optional<BoundedSupport>& b2) {
  if (!b1 || !b2) return std::nullopt;
  const std::size_t n = b1->max_atoms + b2->max_atoms;
  return BoundedSupport{
      n, std::pow(3.0, static_cast<double>(n)) * b1->sup_bound * b2->sup_bound};
}

}  // namespace

ConeFunction star_convolution(const ConeFunction& G1, const ConeFunction& G2,
                              std::size_t cap) {
  SupportCertificate cert = union_certificate(G1.certificate(), G2.certificate());
  std::optional<BoundedSupport> bounded = star_bounded(G1.bounded(), G2.bounded());

  auto eval = [G1, G2, cap](const FiniteDiscreteMeasure& eta) {
    const std::size_t m = eta.support_size();
    if (m > cap)
      throw TooManyAtoms("star convolution over " + std::to_string(m) +
                         " atoms exceeds cap " + std::to_string(cap));
    const std::vector<WeightedAtom>& atoms = eta.atoms();

    std::vector<int> part(m, 0);
    std::vector<WeightedAtom> left, right;
    double acc = 0.0;
    while (true) {
      left.clear();
      right.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (part[i] != 2) left.push_back(atoms[i]);
        if (part[i] != 0) right.push_back(atoms[i]);
      }
      acc += G1(FiniteDiscreteMeasure::from_sorted_atoms(left)) *
             G2(FiniteDiscreteMeasure::from_sorted_atoms(right));

      std::size_t i = 0;
      while (i < m && part[i] == 2) part[i++] = 0;
      if (i == m) break;
      ++part[i];
    }
    return acc;
  };

  return ConeFunction(std::move(eval), std::move(cert), bounded);
}

BoundCheckReport k_bound_check(const ConeFunction& G,
                               std::span<const FiniteDiscreteMeasure> etas,
                               std::size_t cap) {
  if (!G.bounded())
    throw InvalidArgument("growth audit needs a bounded-support certificate");
  if (!G.certificate().weight_band)
    throw InvalidArgument("growth audit needs a weight band in the certificate");

  const double a = G.certificate().weight_band->lo;
  const auto n_exp = static_cast<double>(G.bounded()->max_atoms);
  const double big_c =
      G.bounded()->sup_bound * std::pow(std::max(1.0, 1.0 / a), n_exp);
  const Box& lambda = G.certificate().lambda;

  BoundCheckReport report;
  report.trials = etas.size();
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const double kg = k_transform(G, etas[i], cap);
    const double envelope = big_c * std::pow(1.0 + etas[i].mass(lambda), n_exp);
    const double ratio = envelope > 0.0
                             ? std::abs(kg) / envelope
                             : (kg == 0.0 ? 0.0
                                          : std::numeric_limits<double>::infinity());
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_index = i;
    }
    if (ratio > 1.0 + 1e-12)
      throw BoundViolated("growth envelope violated at trial " +
                          std::to_string(i));
  }
  return report;
}

}  // namespace cone
