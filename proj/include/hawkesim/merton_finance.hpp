#pragma once

#include <cstdint>
#include <vector>

#include "hawkesim/gchp.hpp"

namespace hawkesim {

// Market with a bank account growing at rate r and a risky asset
// S_t = S_0 exp(G(t)) whose log driver G is approximated by the diffusion
// limit drift*t + sigma_bar*W(t). The Ito correction makes the price drift
// mu_e = drift + sigma_bar^2/2.
struct FinanceMarket {
  FinanceMarket(double r, GCHPModel model, double x0, double b0 = 1.0);
  double r;
  GCHPModel model;
  DiffusionParams params;  // derived from model at construction
  double x0;               // initial wealth
  double b0;               // initial bond price
  double mu_e() const { return params.drift + 0.5 * params.sigma_bar * params.sigma_bar; }
};

struct FinanceStrategy {
  double pi_star = 0.0;
};

// Price SDE coefficients dS = S(mu_e dt + sigma_bar dW).
struct StockSdeCoefficients {
  double drift = 0.0;
  double vol = 0.0;
};
StockSdeCoefficients stock_sde_coefficients(const DiffusionParams& params);

// Log-utility optimum pi* = (mu_e - r)/sigma_bar^2
//                         = (a* lambda0/(1-mu_hat) + sigma_bar^2/2 - r)/sigma_bar^2.
// Throws SigmaBarZero when sigma_bar = 0.
FinanceStrategy optimal_fraction_finance(const DiffusionParams& params, double r);

// E log X_T = log x0 + (r + pi(mu_e - r) - pi^2 sigma_bar^2 / 2) T.
double expected_log_utility(const FinanceMarket& market, double pi, double horizon);

// Constant-fraction wealth path on an even grid. Each step applies the exact
// log-normal solution of dX = X[(r + pi(mu_e - r))dt + pi sigma_bar dW]:
//   X_{k+1} = X_k exp{(r + pi(mu_e - r) - pi^2 sigma_bar^2/2) dt
//                    + pi sigma_bar sqrt(dt) Z_k}.
SampledPath simulate_wealth(const FinanceMarket& market, double pi, double horizon, int n_steps,
                            std::uint64_t seed);

struct GridPoint {
  double pi = 0.0;
  double utility_mc = 0.0;
  double utility_analytic = 0.0;
  double std_error = 0.0;
};

struct GridSearchResult {
  double best_pi = 0.0;
  std::vector<GridPoint> points;
};

// Monte Carlo E log X_T over a grid of fractions with common random numbers:
// one standard normal per path reused for every grid value. The terminal
// log-normal draw is exact for a constant fraction, so a single step to the
// horizon suffices. Ties at the maximum resolve to the earliest grid entry.
GridSearchResult grid_search_optimal_pi(const FinanceMarket& market, const std::vector<double>& pi_grid,
                                        double horizon, int n_paths, std::uint64_t seed);

}  // namespace hawkesim
