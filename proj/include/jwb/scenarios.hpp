#ifndef JWB_SCENARIOS_HPP
#define JWB_SCENARIOS_HPP

#include "jwb/bundles.hpp"

namespace jwb::bundles {

using Params = std::map<std::string, long>;

struct ScenarioOutput {
  CurveContext ctx;
  BundleNF computed;
  BundleNF expected;
};

// One registered decomposition display. `conditional` rows reproduce cases
// whose occurrence the source leaves open, `suspect` rows carry a printed
// display that disagrees with the surrounding formulas; both are reported
// but excluded from the pass/fail gate.
struct ScenarioDef {
  std::string id;
  std::string suite;
  bool conditional = false;
  bool suspect = false;
  std::string note;
  Params defaults;
  std::function<ScenarioOutput(const Params&)> build;
};

struct ScenarioResult {
  std::string id;
  std::string suite;
  Params params;
  bool applicable = true;  // false when a rule gap or range error fires
  bool match = false;
  bool conditional = false;
  bool suspect = false;
  std::string note;
  std::string computed;
  std::string expected;

  bool gates() const { return !conditional && !suspect; }
  std::string line() const;  // one table row, deterministic
};

const std::vector<ScenarioDef>& scenario_registry();

// Runs one scenario; unknown ids and out-of-range parameters throw.
ScenarioResult run_scenario(const std::string& id, const Params& overrides = {});

// Selector: "all", a suite name, or a single scenario id.
std::vector<ScenarioResult> run_suite(const std::string& selector);

std::vector<std::string> suite_names();

}  // namespace jwb::bundles

#endif
