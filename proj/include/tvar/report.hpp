#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace tvar {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

}  // namespace tvar
