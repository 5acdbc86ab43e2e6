#include "cone/report.hpp"

#include <cstdio>
#include <ctime>

namespace cone {

namespace {

using Json = nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool Report::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

Json report_to_json(const Report& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"kind", c.exact ? "exact" : "statistical"},
                          {"criterion", c.criterion},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"lhs_se", c.lhs_se},
                          {"rhs_se", c.rhs_se},
                          {"statistic", c.statistic},
                          {"threshold", c.threshold},
                          {"replicates", c.replicates},
                          {"pass", c.pass}});
  }
  return Json{{"command", report.command},
              {"suite", report.suite},
              {"seed", report.seed},
              {"checks", std::move(checks)},
              {"all_pass", report.all_pass()}};
}

std::string report_to_string(const Report& report) {
  Json doc{{"meta", Json{{"generated_at", utc_now()}}},
           {"report", report_to_json(report)}};
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::string out =
      "name,kind,criterion,lhs,lhs_se,rhs,rhs_se,statistic,threshold,"
      "replicates,pass\n";
  for (const CheckResult& c : report.checks) {
    out += c.name;
    out += c.exact ? ",exact," : ",statistical,";
    out += std::to_string(c.criterion);
    out += ',' + csv_number(c.lhs) + ',' + csv_number(c.lhs_se);
    out += ',' + csv_number(c.rhs) + ',' + csv_number(c.rhs_se);
    out += ',' + csv_number(c.statistic) + ',' + csv_number(c.threshold);
    out += ',' + std::to_string(c.replicates);
    out += c.pass ? ",true\n" : ",false\n";
  }
  return out;
}

}  // namespace cone
