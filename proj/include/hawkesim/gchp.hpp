#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hawkesim/hawkes.hpp"
#include "hawkesim/markov.hpp"

namespace hawkesim {

// Compound process S(t) = s0 + sum_{i<=N(t)} a(X_i): event times from a
// self-exciting counting process, marks from an ergodic chain advanced one
// step per event, chain independent of the event times.
struct GCHPModel {
  GCHPModel(HawkesParams hawkes, MarkovChainSpec chain, double s0,
            std::optional<int> initial_state = std::nullopt);
  HawkesParams hawkes;
  MarkovChainSpec chain;
  double s0;
  // 1-based fixed start for the mark chain; unset means a stationary draw.
  std::optional<int> initial_state;
};

// One compound realization. cumulative[k] = s0 + sum of the first k+1 marks.
struct MarkedEventPath {
  double horizon = 0.0;
  double s0 = 0.0;
  std::vector<double> times;
  std::vector<int> states;  // 1-based labels
  std::vector<double> marks;
  std::vector<double> cumulative;
  double terminal() const { return cumulative.empty() ? s0 : cumulative.back(); }
};

// Long-run drift inputs and the diffusion-limit volatilities:
//   drift      = a* lambda0 / (1 - mu_hat)
//   sigma_star = sigma sqrt(lambda0 / (1 - mu_hat))
//   sigma_bar  = sqrt(sigma_star^2 + a*^2 lambda0 / (1 - mu_hat)^3)
struct DiffusionParams {
  double a_star = 0.0;
  double sigma = 0.0;
  double sigma_star = 0.0;
  double sigma_bar = 0.0;
  double drift = 0.0;
  double mu_hat = 0.0;
  double lambda0 = 0.0;
};

// Stationary mean mark a* = sum_i pi*_i a(i).
double a_star(const MarkovChainSpec& chain, const StationaryDistribution& pi);

// Long-run variance parameter of the centered mark sums:
//   b(i) = a(i) - a*,  g = (P + Pi* - I)^{-1} b,
//   v(i) = b(i)^2 + sum_j (g(j)-g(i))^2 P(i,j) - 2 b(i) sum_j (g(j)-g(i)) P(i,j),
//   sigma^2 = sum_i pi*_i v(i).
double sigma_squared(const MarkovChainSpec& chain);

// Full parameter set for the diffusion approximation of a model.
DiffusionParams diffusion_params(const GCHPModel& model);

// Closed form for a two-state chain with marks (+delta, -delta).
// Convention: state 1 carries +delta and keeps it with probability p; state 2
// carries -delta and keeps it with probability p'. Then pi* = (1-p')/(2-p-p')
// is the stationary mass of the +delta state,
//   a*      = delta (2 pi* - 1),
//   sigma^2 = 4 delta^2 ((1 - p' + pi*(p'-p))/(p+p'-2)^2 - pi*(1-pi*)).
// Throws DegenerateChain at the p = p' = 1 corner.
struct TwoStateParams {
  double a_star = 0.0;
  double sigma_sq = 0.0;
};
TwoStateParams two_state_params(double delta, double p, double p_prime);

// Event times, mark-chain states and cumulative sums of one realization.
// Sub-streams for times, the stationary initial draw and the chain are derived
// from the caller seed, so a path is a pure function of (model, horizon, seed).
MarkedEventPath simulate_gchp(const GCHPModel& model, double horizon, std::uint64_t seed);

// (S(T) - s0 - drift*T) / (sigma_bar sqrt(T)); asymptotically standard normal.
// Throws SigmaBarZero when params.sigma_bar = 0.
double fclt_statistic_gchp(const MarkedEventPath& path, const DiffusionParams& params);

// Piecewise-linear sampled function of time.
struct SampledPath {
  std::vector<double> times;
  std::vector<double> values;
};

// Gaussian random walk s0 + drift*t + sigma_bar*W(t) on an even grid of
// roughly T/dt steps (dt is rounded so the grid lands exactly on T).
SampledPath approximate_diffusion_path(const DiffusionParams& params, double s0, double horizon, double dt,
                                       std::uint64_t seed);

}  // namespace hawkesim
