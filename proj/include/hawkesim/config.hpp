#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hawkesim/merton_finance.hpp"
#include "hawkesim/merton_insurance.hpp"

namespace hawkesim {

enum class ExperimentKind {
  lln_hp,
  fclt_hp,
  lln_gchp,
  fclt_gchp,
  params,
  finance_opt,
  insurance_opt,
  ruin,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);  // throws ConfigError

// Flat sectioned key-value config. Text format:
//   [section]
//   key = value            # comments with '#' or ';'
//   P = 0.6 0.4            # matrix rows continue on indented lines
//       0.3 0.7
struct ExperimentConfig {
  struct Model {
    double lambda0 = 1.0;
    std::string kernel = "zero";  // "zero" | "exponential"
    double alpha = 0.0;
    double beta = 1.0;
    std::vector<std::vector<double>> P;  // empty = unset
    std::vector<double> a;               // empty = unset
    double s0 = 0.0;
    double u = 1.0;
    double c = 0.0;
    std::optional<int> initial_state;
    bool operator==(const Model&) const = default;
  };
  struct Market {
    double r = 0.0;
    double asset_drift = 0.0;
    double asset_vol = 0.0;
    double x0 = 1.0;
    double b0 = 1.0;
    bool operator==(const Market&) const = default;
  };
  struct Run {
    std::optional<ExperimentKind> kind;
    double horizon = 1.0;
    std::optional<double> dt;
    std::optional<int> n_steps;
    int n_paths = 100;
    std::uint64_t seed = 1;
    double pi = 0.0;
    std::vector<double> pi_grid;  // empty = unset
    double level = 0.01;
    std::string mode = "diffusion";  // "diffusion" | "jump"
    bool operator==(const Run&) const = default;
  };

  Model model;
  Market market;
  Run run;
  bool operator==(const ExperimentConfig&) const = default;

  // dt and n_steps are alternatives; explicit n_steps wins, then dt, then 1000.
  int resolved_n_steps() const;
};

// Throws ConfigError with a section.key message on any unknown key, bad value
// or conflicting setting. parse(serialize(parse(text))) == parse(text).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

// Typed model builders; wrap constructor failures in ConfigError naming the field.
MarkovChainSpec chain_from_config(const ExperimentConfig& config);
HawkesParams hawkes_from_config(const ExperimentConfig& config);
GCHPModel gchp_from_config(const ExperimentConfig& config);
FinanceMarket finance_market_from_config(const ExperimentConfig& config);
InsuranceModel insurance_model_from_config(const ExperimentConfig& config);

}  // namespace hawkesim
