#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace agt {

/// Outcome of a verification suite: one named pass/fail entry per check.
struct Report {
  struct Entry {
    std::string name;
    bool pass = false;
    std::string detail;
  };

  std::string title;
  std::vector<Entry> entries;

  void add(std::string name, bool pass, std::string detail = {}) {
    entries.push_back({std::move(name), pass, std::move(detail)});
  }

  bool passed() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }

  const Entry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }

  std::string to_text() const {
    std::string out = "report " + title + '\n';
    for (const auto& e : entries) {
      out += e.pass ? "PASS " : "FAIL ";
      out += e.name;
      if (!e.detail.empty()) out += " :: " + e.detail;
      out += '\n';
    }
    out += std::string("verdict: ") + (passed() ? "pass" : "fail") + '\n';
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["report"] = title;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      j["entries"].push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
    }
    j["verdict"] = passed() ? "pass" : "fail";
    return j;
  }
};

}  // namespace agt
