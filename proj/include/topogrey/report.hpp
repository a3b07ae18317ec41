#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace topogrey {

/// One verdict inside a report; failing verdicts must carry a witness in the
/// details object.
struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json details;
};

struct Report {
  std::string command;
  nlohmann::json params;
  std::vector<CheckResult> checks;
  double wall_time_ms = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json(bool include_timing) const {
    nlohmann::json j;
    j["command"] = command;
    j["params"] = params;
    j["pass"] = pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      if (!c.details.is_null()) cj["details"] = c.details;
      j["checks"].push_back(cj);
    }
    if (include_timing) j["wall_time_ms"] = wall_time_ms;
    return j;
  }
};

}  // namespace topogrey
