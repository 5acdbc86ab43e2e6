#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cone/geometry.hpp"
#include "cone/intensity.hpp"
#include "cone/test_function.hpp"

namespace cone {

/// One fully validated run description: the command, the measure law,
/// and the output contract. The defaults describe the gamma law with
/// unit intensity on the unit box, watched through the [0.5, 2] weight
/// window.
struct RunConfig {
  std::string command = "check";
  std::string suite = "all";
  LevyIntensity nu = LevyIntensity::gamma(1.0);
  BaseMeasure sigma{Box::unit(1), 1.0};
  Window window{Box::unit(1), 0.5, 2.0};
  double truncation_tol = 1e-6;
  std::uint64_t seed = 2026;
  long replicates = 100000;
  int instances = 100;
  std::string out;                 // empty writes to standard output
  std::string format = "json";     // json | csv
  std::string estimate_kind = "laplace";
  int moment_order = 2;
  std::optional<TestFunction> estimate_f;
  std::string law_echo;            // canonical JSON of the law block
};

/// Command-line values that take precedence over the config document.
struct CliOverrides {
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<long> replicates;
  std::optional<int> instances;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> estimate_kind;
  std::optional<int> moment_order;
};

/// Assembles a run: defaults, then the JSON config document when given,
/// then the overrides, then validation. ConfigError names the offending
/// field; IoError covers an unreadable file.
RunConfig make_run_config(const std::string& command,
                          const std::optional<std::string>& config_path,
                          const CliOverrides& overrides);

/// Writes a header echoing the law (with the realized truncation for
/// gamma laws), then one JSON measure per line, deterministically in
/// config + seed.
int run_sample(const RunConfig& config);

/// Runs the selected verification suite and writes its report; returns
/// 0 exactly when every check passes.
int run_check(const RunConfig& config);

/// Runs one estimator against its exact or quadrature reference, as a
/// one-row report.
int run_estimate(const RunConfig& config);

/// Dispatch on config.command.
int run(const RunConfig& config);

}  // namespace cone
