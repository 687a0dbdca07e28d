#include "hawkesim/experiments.hpp"

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>

#include "hawkesim/errors.hpp"
#include "hawkesim/io.hpp"
#include "hawkesim/rng.hpp"
#include "hawkesim/stats.hpp"

namespace hawkesim {

namespace {

void write_params(JsonWriter& w, const DiffusionParams& p) {
  w.begin_object();
  w.key("a_star").value(p.a_star);
  w.key("sigma").value(p.sigma);
  w.key("sigma_star").value(p.sigma_star);
  w.key("sigma_bar").value(p.sigma_bar);
  w.key("drift").value(p.drift);
  w.key("mu_hat").value(p.mu_hat);
  w.key("lambda").value(p.lambda0);
  w.end_object();
}

void write_normality(JsonWriter& w, const NormalityReport& rep) {
  w.key("n").value(static_cast<std::int64_t>(rep.n));
  w.key("ks_statistic").value(rep.ks);
  w.key("ks_critical").value(rep.ks_critical);
  w.key("mean").value(rep.mean);
  w.key("variance").value(rep.variance);
  w.key("pass").value(rep.pass);
}

std::string statistics_csv(const std::vector<double>& values) {
  std::string out = "path,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += fmt_double(values[i]);
    out += '\n';
  }
  return out;
}

struct KindOutput {
  std::string result_json;
  std::vector<std::pair<std::string, std::string>> csv_files;
};

KindOutput run_lln_hp(const ExperimentConfig& cfg, bool csv) {
  const HawkesParams hp = hawkes_from_config(cfg);
  const double horizon = cfg.run.horizon;
  std::vector<double> stats(cfg.run.n_paths);
  for (int i = 0; i < cfg.run.n_paths; ++i) {
    const EventPath path = simulate_hawkes(hp, horizon, path_seed(cfg.run.seed, i));
    stats[i] = lln_statistic_hp(path);
  }
  double mean = 0.0;
  for (double v : stats) mean += v;
  mean /= stats.size();
  const double limit = hp.lambda0 / (1.0 - branching_ratio(hp.kernel));
  JsonWriter w;
  w.begin_object();
  w.key("n_paths").value(cfg.run.n_paths);
  w.key("horizon").value(horizon);
  w.key("mean_rate").value(mean);
  w.key("limit").value(limit);
  w.key("relative_error").value(std::fabs(mean - limit) / limit);
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv) {
    out.csv_files.emplace_back("statistics.csv", statistics_csv(stats));
    out.csv_files.emplace_back(
        "sample_path.csv", event_path_csv(simulate_hawkes(hp, horizon, path_seed(cfg.run.seed, 0))));
  }
  return out;
}

KindOutput run_fclt_hp(const ExperimentConfig& cfg, bool csv) {
  const HawkesParams hp = hawkes_from_config(cfg);
  std::vector<double> stats(cfg.run.n_paths);
  for (int i = 0; i < cfg.run.n_paths; ++i) {
    const EventPath path = simulate_hawkes(hp, cfg.run.horizon, path_seed(cfg.run.seed, i));
    stats[i] = fclt_statistic_hp(path, hp);
  }
  const NormalityReport rep = normality_check(stats, cfg.run.level);
  JsonWriter w;
  w.begin_object();
  w.key("horizon").value(cfg.run.horizon);
  write_normality(w, rep);
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv) out.csv_files.emplace_back("statistics.csv", statistics_csv(stats));
  return out;
}

KindOutput run_lln_gchp(const ExperimentConfig& cfg, bool csv) {
  const GCHPModel model = gchp_from_config(cfg);
  const DiffusionParams dp = diffusion_params(model);
  std::vector<double> stats(cfg.run.n_paths);
  for (int i = 0; i < cfg.run.n_paths; ++i) {
    const MarkedEventPath path = simulate_gchp(model, cfg.run.horizon, path_seed(cfg.run.seed, i));
    stats[i] = (path.terminal() - path.s0) / cfg.run.horizon;
  }
  double mean = 0.0;
  for (double v : stats) mean += v;
  mean /= stats.size();
  JsonWriter w;
  w.begin_object();
  w.key("n_paths").value(cfg.run.n_paths);
  w.key("horizon").value(cfg.run.horizon);
  w.key("mean_rate").value(mean);
  w.key("limit").value(dp.drift);
  w.key("absolute_error").value(std::fabs(mean - dp.drift));
  w.key("params");
  write_params(w, dp);
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv) {
    out.csv_files.emplace_back("statistics.csv", statistics_csv(stats));
    out.csv_files.emplace_back(
        "sample_path.csv",
        marked_event_path_csv(simulate_gchp(model, cfg.run.horizon, path_seed(cfg.run.seed, 0))));
  }
  return out;
}

KindOutput run_fclt_gchp(const ExperimentConfig& cfg, bool csv) {
  const GCHPModel model = gchp_from_config(cfg);
  const DiffusionParams dp = diffusion_params(model);
  std::vector<double> stats(cfg.run.n_paths);
  double unscaled_var = 0.0;
  {
    std::vector<double> unscaled(cfg.run.n_paths);
    for (int i = 0; i < cfg.run.n_paths; ++i) {
      const MarkedEventPath path = simulate_gchp(model, cfg.run.horizon, path_seed(cfg.run.seed, i));
      stats[i] = fclt_statistic_gchp(path, dp);
      unscaled[i] = stats[i] * dp.sigma_bar;  // (S(T) - s0 - drift T)/sqrt(T)
    }
    double mean = 0.0;
    for (double v : unscaled) mean += v;
    mean /= unscaled.size();
    for (double v : unscaled) unscaled_var += (v - mean) * (v - mean);
    unscaled_var /= (unscaled.size() - 1);
  }
  const NormalityReport rep = normality_check(stats, cfg.run.level);
  JsonWriter w;
  w.begin_object();
  w.key("horizon").value(cfg.run.horizon);
  write_normality(w, rep);
  w.key("unscaled_variance").value(unscaled_var);
  w.key("sigma_bar_sq").value(dp.sigma_bar * dp.sigma_bar);
  w.key("params");
  write_params(w, dp);
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv) out.csv_files.emplace_back("statistics.csv", statistics_csv(stats));
  return out;
}

KindOutput run_params(const ExperimentConfig& cfg, bool) {
  const GCHPModel model = gchp_from_config(cfg);
  JsonWriter w;
  write_params(w, diffusion_params(model));
  return KindOutput{w.str(), {}};
}

KindOutput run_finance_opt(const ExperimentConfig& cfg, bool csv) {
  const FinanceMarket market = finance_market_from_config(cfg);
  const FinanceStrategy strat = optimal_fraction_finance(market.params, market.r);
  JsonWriter w;
  w.begin_object();
  w.key("pi_star").value(strat.pi_star);
  w.key("mu_e").value(market.mu_e());
  w.key("sigma_bar").value(market.params.sigma_bar);
  w.key("r").value(market.r);
  w.key("grid");
  w.begin_array();
  std::optional<GridSearchResult> grid;
  if (!cfg.run.pi_grid.empty()) {
    grid = grid_search_optimal_pi(market, cfg.run.pi_grid, cfg.run.horizon, cfg.run.n_paths, cfg.run.seed);
    for (const GridPoint& pt : grid->points) {
      w.begin_object();
      w.key("pi").value(pt.pi);
      w.key("utility_mc").value(pt.utility_mc);
      w.key("utility_analytic").value(pt.utility_analytic);
      w.key("stderr").value(pt.std_error);
      w.end_object();
    }
  }
  w.end_array();
  w.key("argmax_pi");
  if (grid) w.value(grid->best_pi);
  else w.null();
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv && grid) {
    std::string table = "pi,utility_mc,utility_analytic,stderr\n";
    for (const GridPoint& pt : grid->points) {
      table += fmt_double(pt.pi);
      table += ',';
      table += fmt_double(pt.utility_mc);
      table += ',';
      table += fmt_double(pt.utility_analytic);
      table += ',';
      table += fmt_double(pt.std_error);
      table += '\n';
    }
    out.csv_files.emplace_back("grid.csv", table);
    out.csv_files.emplace_back("sample_wealth.csv",
                               wealth_path_csv(simulate_wealth(market, strat.pi_star, cfg.run.horizon,
                                                               cfg.resolved_n_steps(),
                                                               path_seed(cfg.run.seed, 0))));
  }
  return out;
}

KindOutput run_insurance_opt(const ExperimentConfig& cfg, bool) {
  const InsuranceModel model = insurance_model_from_config(cfg);
  const InsuranceSolution sol = optimal_fraction_insurance(model);
  JsonWriter w;
  w.begin_object();
  w.key("theta").value(sol.theta);
  w.key("p").value(sol.p);
  w.key("p_constraint_ok").value(sol.p_constraint_ok);
  w.key("pi").value(sol.pi);
  w.key("sigma_bar").value(model.claims_params.sigma_bar);
  w.key("drift_claims").value(model.claims_params.drift);
  w.key("safety_loading_margin").value(model.safety_loading_margin());
  w.end_object();
  return KindOutput{w.str(), {}};
}

KindOutput run_ruin(const ExperimentConfig& cfg, bool csv) {
  const InsuranceModel model = insurance_model_from_config(cfg);
  const SurplusMode mode = cfg.run.mode == "jump" ? SurplusMode::jump : SurplusMode::diffusion;
  const int n_steps = cfg.resolved_n_steps();
  const RuinEstimate est =
      ruin_probability_mc(model, cfg.run.pi, cfg.run.horizon, cfg.run.n_paths, n_steps, cfg.run.seed, mode);
  JsonWriter w;
  w.begin_object();
  w.key("mode").value(cfg.run.mode);
  w.key("pi").value(cfg.run.pi);
  w.key("horizon").value(cfg.run.horizon);
  w.key("n_paths").value(cfg.run.n_paths);
  w.key("n_steps").value(n_steps);
  w.key("probability").value(est.probability);
  w.key("stderr").value(est.std_error);
  w.end_object();
  KindOutput out{w.str(), {}};
  if (csv) {
    const SurplusPath sample =
        mode == SurplusMode::diffusion
            ? simulate_surplus_diffusion(model, cfg.run.pi, cfg.run.horizon, n_steps, path_seed(cfg.run.seed, 0))
            : simulate_surplus_jump(model, cfg.run.pi, cfg.run.horizon, n_steps, path_seed(cfg.run.seed, 0));
    out.csv_files.emplace_back("sample_surplus.csv", surplus_path_csv(sample));
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const ExperimentOptions& options) {
  if (!cfg.run.kind) throw ConfigError("run.kind: required");
  const ExperimentKind kind = *cfg.run.kind;
  KindOutput out;
  switch (kind) {
    case ExperimentKind::lln_hp: out = run_lln_hp(cfg, options.csv); break;
    case ExperimentKind::fclt_hp: out = run_fclt_hp(cfg, options.csv); break;
    case ExperimentKind::lln_gchp: out = run_lln_gchp(cfg, options.csv); break;
    case ExperimentKind::fclt_gchp: out = run_fclt_gchp(cfg, options.csv); break;
    case ExperimentKind::params: out = run_params(cfg, options.csv); break;
    case ExperimentKind::finance_opt: out = run_finance_opt(cfg, options.csv); break;
    case ExperimentKind::insurance_opt: out = run_insurance_opt(cfg, options.csv); break;
    case ExperimentKind::ruin: out = run_ruin(cfg, options.csv); break;
  }

  // Assemble the report document around the kind-specific result. The result
  // JSON is spliced in verbatim (it is already produced by JsonWriter), with
  // its indentation shifted one level.
  std::string indented;
  indented.reserve(out.result_json.size());
  for (char ch : out.result_json) {
    indented.push_back(ch);
    if (ch == '\n') indented.append(2, ' ');
  }
  JsonWriter w;
  w.begin_object();
  w.key("generated_at").value(iso_timestamp_utc());
  w.key("kind").value(to_string(kind));
  w.key("seed").value(cfg.run.seed);
  w.key("result");
  std::string doc = w.str() + indented;
  doc += "\n}";

  ExperimentReport report;
  report.kind = kind;
  report.result_json = out.result_json;
  report.csv_files = std::move(out.csv_files);
  report.json = std::move(doc);

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    write_text_file(*options.out_dir + "/report.json", report.json + "\n");
    for (const auto& [name, content] : report.csv_files) {
      write_text_file(*options.out_dir + "/" + name, content);
    }
  }
  return report;
}

}  // namespace hawkesim
