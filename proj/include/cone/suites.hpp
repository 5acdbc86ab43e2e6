#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cone/report.hpp"

namespace cone {

/// Shared knobs for the verification suites. Exact suites draw
/// `instances` random inputs per identity; statistical suites draw
/// `replicates` Monte-Carlo samples per check.
struct SuiteOptions {
  std::uint64_t seed = 2026;
  long replicates = 100000;
  int instances = 100;
  /// Acceptance band for algebraic identities evaluated in floating
  /// point, as a relative error against max(1, |lhs|, |rhs|).
  double exact_tol = 1e-10;
  /// Acceptance band for closed forms reproduced through adaptive
  /// quadrature, whose own tolerance is the limiting factor.
  double quadrature_tol = 1e-7;
  /// Acceptance band for Monte-Carlo z-scores.
  double z_max = 4.0;
};

/// Transform identities: K-inversion both ways against subset-sum
/// oracles, the star-convolution homomorphism, the Lebesgue-Poisson
/// exponent product form, and the growth and cardinality bounds.
std::vector<CheckResult> suite_ktransform(const SuiteOptions& opts = {});

/// Polynomial identities: power-sum oracles, the binomial and lowering
/// identities, the generating function, closed-form gradients, and the
/// norm bound.
std::vector<CheckResult> suite_polynomials(const SuiteOptions& opts = {});

/// Random-measure laws: windowed atom-count law, the add-one-atom
/// identity, Laplace transforms, and the moment composition formula.
std::vector<CheckResult> suite_mecke(const SuiteOptions& opts = {});

/// Correlation measures of the bounded-set and exponent catalogs
/// against their Lebesgue-Poisson integrals.
std::vector<CheckResult> suite_correlation(const SuiteOptions& opts = {});

/// Difference calculus: death-birth form equality, form-generator
/// duality, integration by parts, and positivity on the diagonal.
std::vector<CheckResult> suite_calculus(const SuiteOptions& opts = {});

const std::vector<std::string>& suite_names();

/// Runs one suite by name, or all of them in order for "all". Unknown
/// selectors raise ConfigError.
std::vector<CheckResult> run_suite(const std::string& selector,
                                   const SuiteOptions& opts = {});

}  // namespace cone
