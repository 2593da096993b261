#pragma once

#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // measured values and pinned tolerances
};

struct BatteryResult {
  std::vector<CheckResult> checks;
  std::string manifest_json;
  std::string manifest_hash;
  bool all_pass = false;
};

/// The release gate: every numbered invariant of the library, each with its
/// tolerance pinned here, executed in order. `verbose` streams one line per
/// check to stdout as it completes.
BatteryResult run_battery(bool verbose = false);

}  // namespace focklab
