#include "hawkesim/merton_finance.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hawkesim/errors.hpp"
#include "hawkesim/rng.hpp"

namespace hawkesim {

FinanceMarket::FinanceMarket(double r_, GCHPModel model_, double x0_, double b0_)
    : r(r_), model(std::move(model_)), params(diffusion_params(model)), x0(x0_), b0(b0_) {
  if (!std::isfinite(r)) throw std::invalid_argument("FinanceMarket: r must be finite");
  if (!(x0 > 0.0)) throw std::invalid_argument("FinanceMarket: x0 must be > 0");
  if (!(b0 > 0.0)) throw std::invalid_argument("FinanceMarket: b0 must be > 0");
  if (!std::isfinite(mu_e())) throw std::invalid_argument("FinanceMarket: effective drift is not finite");
}

StockSdeCoefficients stock_sde_coefficients(const DiffusionParams& params) {
  return StockSdeCoefficients{params.drift + 0.5 * params.sigma_bar * params.sigma_bar, params.sigma_bar};
}

FinanceStrategy optimal_fraction_finance(const DiffusionParams& params, double r) {
  if (params.sigma_bar == 0.0) throw SigmaBarZero("optimal_fraction_finance: sigma_bar is zero");
  const double s2 = params.sigma_bar * params.sigma_bar;
  return FinanceStrategy{(params.drift + 0.5 * s2 - r) / s2};
}

double expected_log_utility(const FinanceMarket& market, double pi, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("expected_log_utility: horizon must be > 0");
  const double s2 = market.params.sigma_bar * market.params.sigma_bar;
  return std::log(market.x0) + (market.r + pi * (market.mu_e() - market.r) - 0.5 * pi * pi * s2) * horizon;
}

SampledPath simulate_wealth(const FinanceMarket& market, double pi, double horizon, int n_steps,
                            std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("simulate_wealth: horizon must be > 0");
  if (n_steps < 1) throw std::invalid_argument("simulate_wealth: n_steps must be >= 1");
  const double dt = horizon / n_steps;
  const double sdt = std::sqrt(dt);
  const double sb = market.params.sigma_bar;
  const double log_drift = (market.r + pi * (market.mu_e() - market.r) - 0.5 * pi * pi * sb * sb) * dt;
  const double vol = pi * sb * sdt;
  Rng rng = make_rng(seed);
  SampledPath path;
  path.times.reserve(n_steps + 1);
  path.values.reserve(n_steps + 1);
  double x = market.x0;
  path.times.push_back(0.0);
  path.values.push_back(x);
  for (int k = 1; k <= n_steps; ++k) {
    x *= std::exp(log_drift + vol * standard_normal(rng));
    path.times.push_back(k * dt);
    path.values.push_back(x);
  }
  return path;
}

GridSearchResult grid_search_optimal_pi(const FinanceMarket& market, const std::vector<double>& pi_grid,
                                        double horizon, int n_paths, std::uint64_t seed) {
  if (pi_grid.empty()) throw std::invalid_argument("grid_search_optimal_pi: empty grid");
  if (n_paths < 2) throw std::invalid_argument("grid_search_optimal_pi: need at least 2 paths");
  if (!(horizon > 0.0)) throw std::invalid_argument("grid_search_optimal_pi: horizon must be > 0");

  // Common random numbers: one terminal draw per path, shared by all fractions.
  std::vector<double> z(static_cast<std::size_t>(n_paths));
  for (int i = 0; i < n_paths; ++i) {
    Rng rng = make_rng(path_seed(seed, static_cast<std::uint64_t>(i)));
    z[static_cast<std::size_t>(i)] = standard_normal(rng);
  }

  const double sb = market.params.sigma_bar;
  const double sqrt_t = std::sqrt(horizon);
  const double log_x0 = std::log(market.x0);

  GridSearchResult result;
  result.points.reserve(pi_grid.size());
  std::size_t best = 0;
  for (std::size_t gi = 0; gi < pi_grid.size(); ++gi) {
    const double pi = pi_grid[gi];
    const double mean_log =
        log_x0 + (market.r + pi * (market.mu_e() - market.r) - 0.5 * pi * pi * sb * sb) * horizon;
    const double noise = pi * sb * sqrt_t;
    double mean = 0.0;
    for (double zi : z) mean += mean_log + noise * zi;
    mean /= n_paths;
    double var = 0.0;
    for (double zi : z) {
      const double d = mean_log + noise * zi - mean;
      var += d * d;
    }
    var /= (n_paths - 1);
    GridPoint pt;
    pt.pi = pi;
    pt.utility_mc = mean;
    pt.utility_analytic = expected_log_utility(market, pi, horizon);
    pt.std_error = std::sqrt(var / n_paths);
    result.points.push_back(pt);
    if (pt.utility_mc > result.points[best].utility_mc) best = gi;
  }
  result.best_pi = result.points[best].pi;
  return result;
}

}  // namespace hawkesim
