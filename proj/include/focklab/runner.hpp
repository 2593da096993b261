#pragma once

#include <string>
#include <utility>
#include <vector>

#include "focklab/config.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Everything an experiment produces, fully in memory and deterministic:
/// artifact contents, a manifest tying config, tolerances and artifact
/// hashes together, and the manifest's own hash.
struct RunResult {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> artifacts;  // name, contents
  std::string manifest_json;
  std::string manifest_hash;
  bool ok = true;
};

/// Dispatches on [experiment] kind: phi-check, berezin-scan, decay-scan,
/// essnorm, frame-check, resolution-check, heat, sharp, translation.
RunResult run_experiment(const Config& config);

/// Writes artifacts plus manifest.json under out_dir (created if missing).
void write_run(const RunResult& result, const std::string& out_dir);

}  // namespace focklab
