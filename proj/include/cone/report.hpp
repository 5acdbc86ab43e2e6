#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cone {

/// One verified identity or estimate. `statistic` is the quantity judged
/// against `threshold` (pass iff statistic <= threshold): the worst
/// relative error over instances for exact checks, |z| for statistical
/// ones, and 0 for pure estimates.
struct CheckResult {
  std::string name;
  bool exact = false;
  int criterion = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  long replicates = 0;
  bool pass = false;
};

struct Report {
  std::string command;
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// The deterministic report body: same config and seed give the same
/// JSON, byte for byte.
nlohmann::json report_to_json(const Report& report);

/// Full document {"meta": {...timestamp...}, "report": {...}}; only the
/// meta block varies between identical runs.
std::string report_to_string(const Report& report);

/// CSV rows, one per check, fully deterministic.
std::string report_to_csv(const Report& report);

}  // namespace cone
