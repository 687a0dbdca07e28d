#include <cstdio>
#include <cstring>

#include "hawkesim/acceptance.hpp"

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  }
  const std::vector<hawkesim::CriterionResult> results = hawkesim::run_acceptance(quick);
  std::fputs(hawkesim::acceptance_text(results).c_str(), stdout);
  return hawkesim::all_pass(results) ? 0 : 1;
}
