#include "hawkesim/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "hawkesim/config.hpp"
#include "hawkesim/experiments.hpp"
#include "hawkesim/io.hpp"
#include "hawkesim/merton_finance.hpp"
#include "hawkesim/merton_insurance.hpp"
#include "hawkesim/rng.hpp"
#include "hawkesim/stats.hpp"

namespace hawkesim {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// Reference two-state compound model: delta=1, lambda=1, alpha=0.5, beta=1,
// stay probabilities 0.6 (the +1 state) and 0.7 (the -1 state).
GCHPModel reference_two_state_model() {
  MarkovChainSpec chain({{0.6, 0.4}, {0.3, 0.7}}, {1.0, -1.0});
  HawkesParams hp(1.0, ExcitationKernel::exponential(0.5, 1.0));
  return GCHPModel(hp, chain, 0.0);
}

// Zero-kernel two-state i.i.d. model whose diffusion limit hits the given
// drift and sigma_bar exactly (lambda = 1): marks drift +- sqrt(sb^2 - drift^2).
GCHPModel calibrated_iid_model(double drift, double sigma_bar) {
  const double d = std::sqrt(sigma_bar * sigma_bar - drift * drift);
  MarkovChainSpec chain({{0.5, 0.5}, {0.5, 0.5}}, {drift - d, drift + d});
  return GCHPModel(HawkesParams(1.0, ExcitationKernel::zero()), chain, 0.0);
}

CriterionResult lln_hp_criterion(bool quick) {
  const double horizon = quick ? 1000.0 : 5000.0;
  const int n_paths = quick ? 50 : 100;
  const HawkesParams hp(1.0, ExcitationKernel::exponential(0.5, 1.0));
  const double limit = 2.0;  // lambda0/(1 - mu_hat)
  double mean = 0.0;
  for (int i = 0; i < n_paths; ++i) {
    mean += lln_statistic_hp(simulate_hawkes(hp, horizon, path_seed(2024, i)));
  }
  mean /= n_paths;
  const double rel = std::fabs(mean - limit) / limit;
  CriterionResult res;
  res.name = "lln_hp";
  res.pass = rel < 0.05;
  res.details = fmt("mean N(T)/T = %.6f, limit 2, relative error %.2e (tol 5e-2)", mean, rel);
  return res;
}

CriterionResult fclt_hp_criterion(bool quick) {
  const double horizon = quick ? 500.0 : 2000.0;
  const int n_paths = quick ? 400 : 2000;
  const HawkesParams hp(1.0, ExcitationKernel::exponential(0.5, 1.0));
  std::vector<double> stats(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    stats[i] = fclt_statistic_hp(simulate_hawkes(hp, horizon, path_seed(77, i)), hp);
  }
  const NormalityReport rep = normality_check(stats, 0.01);
  CriterionResult res;
  res.name = "fclt_hp";
  res.pass = rep.pass;
  res.details = fmt("KS %.4f vs critical %.4f, mean %.3f", rep.ks, rep.ks_critical, rep.mean) +
                fmt(", variance %.3f (level 0.01)", rep.variance);
  return res;
}

CriterionResult sigma_sq_criterion(bool) {
  Rng rng = make_rng(1301);
  double worst_two_state = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const double p = 0.05 + 0.85 * uniform01(rng);
    const double pp = 0.05 + 0.85 * uniform01(rng);
    const double delta = 0.1 + 1.9 * uniform01(rng);
    const TwoStateParams closed = two_state_params(delta, p, pp);
    MarkovChainSpec chain({{p, 1.0 - p}, {1.0 - pp, pp}}, {delta, -delta});
    const StationaryDistribution pi = stationary_distribution(chain);
    worst_two_state = std::max(worst_two_state, std::fabs(a_star(chain, pi) - closed.a_star));
    worst_two_state = std::max(worst_two_state, std::fabs(sigma_squared(chain) - closed.sigma_sq));
  }
  double worst_iid = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 4.0);
    std::vector<double> pi(n);
    double sum = 0.0;
    for (double& v : pi) {
      v = 0.05 + uniform01(rng);
      sum += v;
    }
    for (double& v : pi) v /= sum;
    std::vector<double> a(n);
    for (double& v : a) v = -2.0 + 4.0 * uniform01(rng);
    std::vector<std::vector<double>> rows(n, pi);
    MarkovChainSpec chain(rows, a);
    double mean = 0.0;
    double second = 0.0;
    for (int i = 0; i < n; ++i) {
      mean += pi[i] * a[i];
      second += pi[i] * a[i] * a[i];
    }
    worst_iid = std::max(worst_iid, std::fabs(sigma_squared(chain) - (second - mean * mean)));
  }
  CriterionResult res;
  res.name = "sigma_sq_cross_validation";
  res.pass = worst_two_state < 1e-10 && worst_iid < 1e-12;
  res.details = fmt("two-state closed form max |err| %.2e (tol 1e-10), ", worst_two_state) +
                fmt("iid-rows reduction max |err| %.2e (tol 1e-12)", worst_iid);
  return res;
}

CriterionResult fclt_gchp_criterion(bool quick) {
  const double horizon = quick ? 500.0 : 2000.0;
  const int n_paths = quick ? 400 : 2000;
  const GCHPModel model = reference_two_state_model();
  const DiffusionParams dp = diffusion_params(model);
  std::vector<double> stats(n_paths);
  double var = 0.0;
  double mean_unscaled = 0.0;
  std::vector<double> unscaled(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    const MarkedEventPath path = simulate_gchp(model, horizon, path_seed(5150, i));
    stats[i] = fclt_statistic_gchp(path, dp);
    unscaled[i] = stats[i] * dp.sigma_bar;
    mean_unscaled += unscaled[i];
  }
  mean_unscaled /= n_paths;
  for (double v : unscaled) var += (v - mean_unscaled) * (v - mean_unscaled);
  var /= (n_paths - 1);
  const NormalityReport rep = normality_check(stats, 0.01);
  const double sb2 = dp.sigma_bar * dp.sigma_bar;
  const double var_rel = std::fabs(var - sb2) / sb2;
  CriterionResult res;
  res.name = "fclt_gchp";
  res.pass = rep.pass && var_rel < 0.15;
  res.details = fmt("KS %.4f vs critical %.4f, ", rep.ks, rep.ks_critical) +
                fmt("unscaled variance %.4f vs sigma_bar^2 %.4f ", var, sb2) +
                fmt("(relative error %.2e, tol 0.15)", var_rel);
  return res;
}

CriterionResult poisson_reduction_criterion(bool) {
  const std::vector<double> pi = {0.2, 0.5, 0.3};
  const std::vector<double> a = {0.0, 1.0, 2.0};
  const double lambda0 = 1.5;
  MarkovChainSpec chain({pi, pi, pi}, a);
  const GCHPModel model(HawkesParams(lambda0, ExcitationKernel::zero()), chain, 0.0);
  const DiffusionParams dp = diffusion_params(model);
  double second = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) second += pi[i] * a[i] * a[i];
  const double err = std::fabs(dp.sigma_bar * dp.sigma_bar - lambda0 * second);
  CriterionResult res;
  res.name = "poisson_reduction";
  res.pass = err < 1e-12;
  res.details = fmt("sigma_bar^2 = %.15f vs lambda*E[a^2] = %.15f, ", dp.sigma_bar * dp.sigma_bar,
                    lambda0 * second) +
                fmt("|err| %.2e (tol 1e-12)", err);
  return res;
}

CriterionResult finance_criterion(bool) {
  const FinanceMarket market(0.0, calibrated_iid_model(0.08, 0.2), 1.0);
  const FinanceStrategy strat = optimal_fraction_finance(market.params, market.r);
  const double pi_err = std::fabs(strat.pi_star - 2.5);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  const GridSearchResult gs = grid_search_optimal_pi(market, grid, 1.0, 10000, 99);
  const GridPoint& at_opt = gs.points[10];  // pi = 2.5
  const double mc_err = std::fabs(at_opt.utility_mc - 0.125);
  CriterionResult res;
  res.name = "finance_optimality";
  res.pass = pi_err < 1e-12 && gs.best_pi == 2.5 && mc_err <= 3.0 * at_opt.std_error;
  res.details = fmt("pi* err %.2e (tol 1e-12), argmax %.2f, ", pi_err, gs.best_pi) +
                fmt("MC utility %.5f vs 0.125 (|err| %.2e <= 3 stderr %.2e)", at_opt.utility_mc, mc_err,
                    3.0 * at_opt.std_error);
  return res;
}

CriterionResult insurance_criterion(bool) {
  // Randomized identity checks over valid models.
  Rng rng = make_rng(4242);
  double worst_identity = 0.0;
  double worst_quadratic = 0.0;
  double worst_hjb = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 2.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows) {
      double sum = 0.0;
      for (double& v : row) {
        v = 0.05 + uniform01(rng);
        sum += v;
      }
      for (double& v : row) v /= sum;
    }
    std::vector<double> marks(n);
    for (double& v : marks) v = 3.0 * uniform01(rng);
    const double lambda0 = 0.5 + 1.5 * uniform01(rng);
    const bool zero_kernel = uniform01(rng) < 0.5;
    const double mu_hat = 0.1 + 0.6 * uniform01(rng);
    const ExcitationKernel kernel =
        zero_kernel ? ExcitationKernel::zero() : ExcitationKernel::exponential(mu_hat, 1.0);
    GCHPModel claims(HawkesParams(lambda0, kernel), MarkovChainSpec(rows, marks), 0.0);
    const double u = 0.5 + 4.5 * uniform01(rng);
    const double r = 0.1 * uniform01(rng);
    const double b = 0.2 + 1.8 * uniform01(rng);
    const double a = r - 0.5 + uniform01(rng);
    const double drift = diffusion_params(claims).drift;
    const double c = drift + 0.05 + uniform01(rng);
    const InsuranceModel model(u, c, claims, a, b, r);
    const InsuranceSolution sol = optimal_fraction_insurance(model);
    const double excess = a - r;
    worst_identity = std::max(worst_identity, std::fabs(sol.pi * u * sol.p * b * b - excess) /
                                                  std::max(1.0, std::fabs(excess)));
    const double sb2 = model.claims_params.sigma_bar * model.claims_params.sigma_bar;
    worst_quadratic = std::max(
        worst_quadratic, std::fabs(sb2 * sol.p * sol.p - 2.0 * sol.theta * sol.p - excess * excess / (b * b)));
    worst_hjb = std::max(worst_hjb, hjb_first_order_check(model, sol));
  }

  // Worked case: theta = 1, sigma_bar = 1, a - r = 1, b = u = 1.
  const double root2 = std::sqrt(2.0);
  MarkovChainSpec claim_chain({{0.5, 0.5}, {0.5, 0.5}}, {0.0, root2});  // E[a^2] = 1
  GCHPModel claims(HawkesParams(1.0, ExcitationKernel::zero()), claim_chain, 0.0);
  const double drift = root2 / 2.0;
  const InsuranceModel model(1.0, 1.0 + drift, claims, 1.0, 1.0, 0.0);
  const InsuranceSolution sol = optimal_fraction_insurance(model);
  const double p_err = std::fabs(sol.p - (1.0 + root2));
  const double pi_err = std::fabs(sol.pi - (root2 - 1.0));

  CriterionResult res;
  res.name = "insurance_closed_form";
  res.pass = worst_identity < 1e-12 && worst_quadratic < 1e-10 && worst_hjb < 1e-10 && p_err < 1e-12 &&
             pi_err < 1e-12;
  res.details = fmt("identity %.2e (tol 1e-12), quadratic %.2e (tol 1e-10), ", worst_identity,
                    worst_quadratic) +
                fmt("hjb %.2e (tol 1e-10), ", worst_hjb) +
                fmt("worked case |p-(1+sqrt2)| %.2e, |pi-(sqrt2-1)| %.2e (tol 1e-12)", p_err, pi_err);
  return res;
}

CriterionResult simulator_criterion(bool quick) {
  // Diffusion oracle: pi = 0 and sigma_bar = 0 reduce the SDE to the linear
  // ODE R' = r R + (c - drift); closed form R(t) = u e^{rt} + k (e^{rt}-1)/r.
  MarkovChainSpec zero_marks({{0.5, 0.5}, {0.5, 0.5}}, {0.0, 0.0});
  GCHPModel no_claims(HawkesParams(1.0, ExcitationKernel::zero()), zero_marks, 0.0);
  const double u = 1.0;
  const double r = 0.02;
  const double c = 0.02;  // drift = 0, so k = c
  const InsuranceModel ode_model(u, c, no_claims, 0.05, 1.0, r);
  const int n_steps = quick ? 10000 : 100000;
  const double tol = quick ? 1e-6 : 1e-8;
  const SurplusPath path = simulate_surplus_diffusion(ode_model, 0.0, 1.0, n_steps, 31);
  const double exact = u * std::exp(r) + c * (std::exp(r) - 1.0) / r;
  const double rel = std::fabs(path.values.back() - exact) / exact;

  // Jump oracle: injected empty claim path, pi = 0, r = 0. With dt = 1/1024
  // every premium increment c*dt and every partial sum is a dyadic rational,
  // so the terminal surplus equals u + cT without rounding.
  MarkovChainSpec unit_marks({{1.0}}, {1.0});
  GCHPModel rare_claims(HawkesParams(1e-9, ExcitationKernel::zero()), unit_marks, 0.0);
  const InsuranceModel jump_model(1.0, 0.5, rare_claims, 0.05, 1.0, 0.0);
  MarkedEventPath no_events;
  no_events.horizon = 1.0;
  const SurplusPath jump = simulate_surplus_jump(jump_model, 0.0, 1.0, 1024, 7, no_events);
  const bool jump_exact = jump.values.back() == 1.5 && !jump.ruined;

  CriterionResult res;
  res.name = "simulator_oracles";
  res.pass = rel < tol && jump_exact;
  res.details = fmt("diffusion vs ODE relative error %.2e (tol %.0e), ", rel, tol) +
                std::string("jump no-event terminal ") + (jump_exact ? "== u + cT exactly" : "MISMATCH");
  return res;
}

std::vector<CriterionResult> core_criteria(bool quick) {
  std::vector<CriterionResult> results;
  results.push_back(lln_hp_criterion(quick));
  results.push_back(fclt_hp_criterion(quick));
  results.push_back(sigma_sq_criterion(quick));
  results.push_back(fclt_gchp_criterion(quick));
  results.push_back(poisson_reduction_criterion(quick));
  results.push_back(finance_criterion(quick));
  results.push_back(insurance_criterion(quick));
  results.push_back(simulator_criterion(quick));
  return results;
}

std::string strip_timestamp(const std::string& json) {
  std::string out;
  std::size_t start = 0;
  while (start < json.size()) {
    std::size_t end = json.find('\n', start);
    if (end == std::string::npos) end = json.size();
    const std::string line = json.substr(start, end - start);
    if (line.find("generated_at") == std::string::npos) {
      out += line;
      out += '\n';
    }
    start = end + 1;
  }
  return out;
}

// Runs the quick core suite twice and compares the rendered reports byte for
// byte after dropping the timestamp line. Also reruns one config-driven
// experiment for the same comparison on the report writer.
CriterionResult determinism_criterion() {
  const std::string first = strip_timestamp(acceptance_report_json(core_criteria(true), true));
  const std::string second = strip_timestamp(acceptance_report_json(core_criteria(true), true));
  const bool suite_equal = first == second;

  const std::string cfg_text =
      "[model]\n"
      "lambda = 1\n"
      "kernel = exponential\n"
      "alpha = 0.5\n"
      "beta = 1\n"
      "P = 0.6 0.4\n"
      "    0.3 0.7\n"
      "a = 1 -1\n"
      "[run]\n"
      "kind = lln_gchp\n"
      "T = 50\n"
      "n_paths = 20\n"
      "seed = 9\n";
  const ExperimentConfig cfg = parse_config(cfg_text);
  const bool report_equal =
      strip_timestamp(run_experiment(cfg).json) == strip_timestamp(run_experiment(cfg).json);

  CriterionResult res;
  res.name = "determinism";
  res.pass = suite_equal && report_equal;
  res.details = std::string("quick suite reruns ") + (suite_equal ? "identical" : "DIFFER") +
                ", experiment report reruns " + (report_equal ? "identical" : "DIFFER") +
                " (timestamp excluded)";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool quick) {
  std::vector<CriterionResult> results = core_criteria(quick);
  results.push_back(determinism_criterion());
  return results;
}

std::string acceptance_text(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    out += r.pass ? "PASS " : "FAIL ";
    out += r.name;
    out += "  ";
    out += r.details;
    out += '\n';
  }
  return out;
}

std::string acceptance_report_json(const std::vector<CriterionResult>& results, bool quick) {
  JsonWriter w;
  w.begin_object();
  w.key("generated_at").value(iso_timestamp_utc());
  w.key("mode").value(quick ? "quick" : "full");
  w.key("all_pass").value(all_pass(results));
  w.key("criteria");
  w.begin_array();
  for (const CriterionResult& r : results) {
    w.begin_object();
    w.key("name").value(r.name);
    w.key("pass").value(r.pass);
    w.key("details").value(r.details);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace hawkesim
