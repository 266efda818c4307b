#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nuchern {

struct Check {
  std::string name;
  std::string status;  // "pass", "fail", "skip"
  std::string details;
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Check> checks;

  void add(const std::string& name, bool pass, const std::string& details = "") {
    checks.push_back(Check{name, pass ? "pass" : "fail", details});
  }
  void skip(const std::string& name, const std::string& details = "") {
    checks.push_back(Check{name, "skip", details});
  }
  void merge(const Report& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
  bool overall() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name}, {"status", c.status}, {"details", c.details}});
    j["overall"] = overall() ? "pass" : "fail";
    return j;
  }

  std::string to_text() const {
    std::string s = "== " + command + " ==\n";
    for (const auto& c : checks) {
      s += "[" + c.status + "] " + c.name;
      if (!c.details.empty()) s += "  (" + c.details + ")";
      s += "\n";
    }
    s += "overall: " + std::string(overall() ? "pass" : "fail") + "\n";
    return s;
  }
};

}  // namespace nuchern
