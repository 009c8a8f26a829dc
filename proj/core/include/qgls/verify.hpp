#pragma once

#include <string>
#include <vector>

namespace qgls::verify {

struct CheckResult {
  std::string name;    // "<module>/<check>"
  bool pass = false;
  std::string detail;  // deterministic one-line summary
};

/// Runs the built-in invariant suite.  `filter` keeps the checks whose name
/// contains it (empty keeps everything).  Fixed seeds; output is
/// deterministic for identical builds.
std::vector<CheckResult> run_suite(const std::string& filter = "");

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qgls::verify
