#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hawkesim/config.hpp"

namespace hawkesim {

struct ExperimentOptions {
  std::optional<std::string> out_dir;  // unset: nothing written to disk
  bool csv = false;                    // also write per-path CSV tables
};

struct ExperimentReport {
  ExperimentKind kind{};
  std::string json;                              // full report document
  std::string result_json;                       // the kind-specific result object
  std::vector<std::pair<std::string, std::string>> csv_files;  // name -> content
};

// Dispatches on config.run.kind, runs the experiment and (optionally) writes
// report.json plus CSV tables into options.out_dir. Deterministic given the
// config; only the generated_at timestamp differs between reruns.
ExperimentReport run_experiment(const ExperimentConfig& config, const ExperimentOptions& options = {});

}  // namespace hawkesim
