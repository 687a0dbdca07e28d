#pragma once

#include <string>
#include <vector>

namespace hawkesim {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string details;
};

// Runs the full verification suite (or the reduced quick variant: shorter
// horizons and fewer paths on the three sampling-heavy checks, identical
// closed-form checks). Every criterion uses fixed seeds and pinned
// tolerances, so outcomes are deterministic.
std::vector<CriterionResult> run_acceptance(bool quick);

// One "PASS name  details" line per criterion.
std::string acceptance_text(const std::vector<CriterionResult>& results);

// Report document {generated_at, mode, all_pass, criteria:[...]}.
std::string acceptance_report_json(const std::vector<CriterionResult>& results, bool quick);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace hawkesim
