#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace liebi {

/// Outcome of one numerical verification.
struct CheckReport {
  std::string check;
  std::map<std::string, double> residuals;
  std::map<std::string, std::string> notes;
  double tol = 1e-10;
  bool pass = false;

  double residual(const std::string& key) const {
    auto it = residuals.find(key);
    return it == residuals.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
  }
};

/// A bundle of checks produced by one CLI invocation.
struct SuiteReport {
  std::string suite;
  std::string inputs_digest;
  std::vector<CheckReport> checks;
  std::uint64_t seed = 0;
  int steps = 0;
  double wall_clock_ms = 0.0;

  bool pass() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass; });
  }
};

/// FNV-1a, rendered as 16 hex digits.
inline std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [k, v] : r.residuals) {
    if (std::isfinite(v))
      res[k] = v;
    else
      res[k] = nullptr;
  }
  nlohmann::json j = {{"check", r.check}, {"residuals", res}, {"pass", r.pass}, {"tol", r.tol}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline CheckReport check_report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.tol = j.at("tol").get<double>();
  for (const auto& [k, v] : j.at("residuals").items())
    r.residuals[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  if (j.contains("notes"))
    for (const auto& [k, v] : j.at("notes").items()) r.notes[k] = v.get<std::string>();
  return r;
}

/// Checks are emitted sorted by name so output depends only on the inputs.
inline nlohmann::json to_json(const SuiteReport& s, bool include_wall_clock = true) {
  std::vector<CheckReport> sorted = s.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check < b.check; });
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : sorted) checks.push_back(to_json(c));
  nlohmann::json j = {{"suite", s.suite},
                      {"inputs_digest", s.inputs_digest},
                      {"checks", checks},
                      {"pass", s.pass()},
                      {"seed", s.seed},
                      {"steps", s.steps}};
  if (include_wall_clock) j["wall_clock_ms"] = s.wall_clock_ms;
  return j;
}

}  // namespace liebi
