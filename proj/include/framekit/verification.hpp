#pragma once

#include <string>
#include <utility>
#include <vector>

namespace framekit {

/// One named numeric assertion: passed iff the measured value respects the bound.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
};

struct Verification {
  std::vector<Check> checks;

  void add(std::string name, bool passed, double value, double bound) {
    checks.push_back({std::move(name), passed, value, bound});
  }
  /// value <= bound
  void at_most(std::string name, double value, double bound) {
    add(std::move(name), value <= bound, value, bound);
  }

  bool holds() const {
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

}  // namespace framekit
