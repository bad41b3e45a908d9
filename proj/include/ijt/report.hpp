#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace ijt {

// Outcome of a verification run: named checks, each pass/fail with optional
// counterexample detail.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string subject;
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = "") {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
    return out;
  }
  void merge(const Report& other) {
    for (const auto& c : other.checks) {
      Check copy = c;
      if (!other.subject.empty()) copy.name = other.subject + "/" + copy.name;
      checks.push_back(std::move(copy));
    }
  }
  std::string summary() const {
    std::ostringstream os;
    os << subject << ": ";
    int pass = 0;
    for (const auto& c : checks) pass += c.passed;
    os << pass << "/" << checks.size() << " checks passed";
    for (const auto& f : failures()) os << "\n  FAIL " << f;
    return os.str();
  }
};

}  // namespace ijt
