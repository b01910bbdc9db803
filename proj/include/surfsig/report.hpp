#pragma once

#include <string>
#include <vector>

namespace surfsig {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Ordered pass/fail list produced by the validators.
struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  void append(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.passed, c.detail});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

}  // namespace surfsig
