#pragma once
// Check reports: every verification routine returns the full list of exact
// identity violations it found (empty list = pass), plus how many identities
// it evaluated.

#include <string>
#include <vector>

namespace ainf {

struct Violation {
  std::string where;   // which identity / word failed
  std::string detail;  // residual or explanation
};

struct Report {
  std::vector<Violation> violations;
  long long checks = 0;

  bool ok() const { return violations.empty(); }

  void fail(std::string where, std::string detail) {
    violations.push_back({std::move(where), std::move(detail)});
  }

  void absorb(const Report& other) {
    checks += other.checks;
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }

  std::string str() const {
    if (ok()) return "ok (" + std::to_string(checks) + " identities)";
    std::string s = std::to_string(violations.size()) + " violation(s) in " +
                    std::to_string(checks) + " identities";
    for (const auto& v : violations) {
      s += "\n  " + v.where + ": " + v.detail;
    }
    return s;
  }
};

}  // namespace ainf
