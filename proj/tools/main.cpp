#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hawkesim/acceptance.hpp"
#include "hawkesim/config.hpp"
#include "hawkesim/errors.hpp"
#include "hawkesim/experiments.hpp"
#include "hawkesim/io.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("config", args.config_path, "experiment config file")->required();
  cmd->add_option("--seed", args.seed, "override run.seed");
  cmd->add_option("--out", args.out_dir, "directory for report.json and CSV tables");
  cmd->add_option("--format", args.format, "stdout format: json (report) or csv (primary table)")
      ->check(CLI::IsMember({"json", "csv"}));
}

// bare_result: print only the kind-specific result object, not the full report.
int run_config_command(const CommonArgs& args, std::optional<hawkesim::ExperimentKind> forced_kind,
                       bool bare_result) {
  hawkesim::ExperimentConfig cfg = hawkesim::load_config(args.config_path);
  if (forced_kind) cfg.run.kind = forced_kind;
  if (args.seed) cfg.run.seed = *args.seed;
  hawkesim::ExperimentOptions options;
  options.out_dir = args.out_dir;
  options.csv = args.format == "csv";
  const hawkesim::ExperimentReport report = hawkesim::run_experiment(cfg, options);
  if (args.format == "csv") {
    if (report.csv_files.empty()) {
      std::cerr << "no CSV output for kind " << to_string(report.kind) << "\n";
      return 1;
    }
    std::cout << report.csv_files.front().second;
    return 0;
  }
  std::cout << (bare_result ? report.result_json : report.json) << "\n";
  return 0;
}

int run_verify(bool quick, const std::optional<std::string>& out_dir, const std::string& format) {
  const std::vector<hawkesim::CriterionResult> results = hawkesim::run_acceptance(quick);
  if (format == "json") {
    std::cout << hawkesim::acceptance_report_json(results, quick) << "\n";
  } else {
    std::cout << hawkesim::acceptance_text(results);
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    hawkesim::write_text_file(*out_dir + "/report.json",
                              hawkesim::acceptance_report_json(results, quick) + "\n");
  }
  return hawkesim::all_pass(results) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hawkes-driven compound process simulator and Merton strategy toolkit"};
  app.require_subcommand(1);

  CommonArgs params_args;
  CLI::App* params_cmd = app.add_subcommand("params", "diffusion-limit parameters of the model");
  add_common(params_cmd, params_args);

  CommonArgs simulate_args;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "run the experiment configured in run.kind");
  add_common(simulate_cmd, simulate_args);

  CommonArgs finance_args;
  CLI::App* finance_cmd =
      app.add_subcommand("optimal-finance", "log-utility optimal fraction and grid search");
  add_common(finance_cmd, finance_args);

  CommonArgs insurance_args;
  CLI::App* insurance_cmd =
      app.add_subcommand("optimal-insurance", "exponential-utility optimal fraction");
  add_common(insurance_cmd, insurance_args);

  CommonArgs ruin_args;
  CLI::App* ruin_cmd = app.add_subcommand("ruin", "Monte Carlo ruin probability");
  add_common(ruin_cmd, ruin_args);

  bool quick = false;
  std::optional<std::string> verify_out;
  std::string verify_format = "text";
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_flag("--quick", quick, "reduced path counts and horizons");
  verify_cmd->add_option("--out", verify_out, "directory for report.json");
  verify_cmd->add_option("--format", verify_format, "stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    using hawkesim::ExperimentKind;
    if (app.got_subcommand(params_cmd)) {
      return run_config_command(params_args, ExperimentKind::params, true);
    }
    if (app.got_subcommand(simulate_cmd)) {
      return run_config_command(simulate_args, std::nullopt, false);
    }
    if (app.got_subcommand(finance_cmd)) {
      return run_config_command(finance_args, ExperimentKind::finance_opt, true);
    }
    if (app.got_subcommand(insurance_cmd)) {
      return run_config_command(insurance_args, ExperimentKind::insurance_opt, true);
    }
    if (app.got_subcommand(ruin_cmd)) {
      return run_config_command(ruin_args, ExperimentKind::ruin, false);
    }
    if (app.got_subcommand(verify_cmd)) {
      return run_verify(quick, verify_out, verify_format);
    }
  } catch (const hawkesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const hawkesim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
