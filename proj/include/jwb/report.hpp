#ifndef JWB_REPORT_HPP
#define JWB_REPORT_HPP

#include <string>
#include <vector>

namespace jwb {

struct CheckResult {
  std::string name;
  bool pass = true;
  long samples = 0;
  std::string witness;  // first counterexample, exact rationals
};

struct Report {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string name, bool pass, long samples = 0, std::string witness = "") {
    checks.push_back({std::move(name), pass, samples, std::move(witness)});
  }

  void merge(const Report& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }

  std::string text() const {
    std::string out;
    for (const auto& c : checks) {
      out += "check " + c.name + ": " + (c.pass ? "pass" : "FAIL");
      if (c.samples > 0) out += " (" + std::to_string(c.samples) + " samples)";
      if (!c.pass && !c.witness.empty()) out += "\n  witness: " + c.witness;
      out += "\n";
    }
    return out;
  }
};

}  // namespace jwb

#endif
