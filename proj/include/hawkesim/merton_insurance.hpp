#pragma once

#include <cstdint>
#include <vector>

#include "hawkesim/gchp.hpp"

namespace hawkesim {

// Risk model R(t) = u + c t - G(t) with compound claims G, premium rate c,
// and a risky asset dS = S(a dt + b dW) next to a bank account at rate r.
// The claim marks must be nonnegative and the premium must out-earn the
// long-run claim drift (safety loading).
struct InsuranceModel {
  InsuranceModel(double u, double c, GCHPModel claims, double asset_drift, double asset_vol, double r);
  double u;                 // initial surplus
  double c;                 // premium rate
  GCHPModel claims;         // claim arrival/size model
  double asset_drift;       // a
  double asset_vol;         // b
  double r;                 // risk-free rate, >= 0
  DiffusionParams claims_params;  // derived from claims at construction
  double safety_loading_margin() const { return c - claims_params.drift; }
};

// theta = u r + (c - a* lambda0/(1 - mu_hat)); positive under safety loading.
double theta(const InsuranceModel& model);

// Positive root of sigma_bar^2 p^2 - 2 theta p - (a-r)^2/b^2 = 0:
//   p = (theta + sqrt(theta^2 + sigma_bar^2 (a-r)^2 / b^2)) / sigma_bar^2.
// Throws ZeroVolatility when sigma_bar = 0.
double solve_p(const InsuranceModel& model);

struct InsuranceSolution {
  double theta = 0.0;
  double p = 0.0;
  bool p_constraint_ok = false;  // 0 < p < 2 u r / sigma_bar^2 (reported, not fatal)
  double pi = 0.0;
};

// Exponential-utility optimal fraction of surplus in the risky asset:
//   pi = sigma_bar^2 (a-r) / (u b (theta b + sqrt(theta^2 b^2 + sigma_bar^2 (a-r)^2)))
// which satisfies pi * u * p * b^2 = a - r with p from solve_p.
InsuranceSolution optimal_fraction_insurance(const InsuranceModel& model);

// Poisson special case (mu_hat = 0, i.i.d. claims): evaluates the same closed
// form with drift = lambda0 * mean and sigma_bar^2 = lambda0 * second_moment.
double poisson_optimal_fraction(double lambda0, double mean, double second_moment, double c, double u,
                                double r, double a, double b);

// Coefficients of the controlled surplus generator at (x, pi):
//   first  = x (r + (a-r) pi) + (c - drift_claims)
//   second = (x^2 b^2 pi^2 + sigma_bar^2) / 2
struct GeneratorCoefficients {
  double first_order = 0.0;
  double second_order = 0.0;
};
GeneratorCoefficients generator_coefficients(const InsuranceModel& model, double pi, double x);

// First-order optimality of h(pi) = x (a-r) pi - (p/2) x^2 b^2 pi^2 at the
// solution: returns max(|h'(pi)|, |argmax - pi|), both ~0 at the closed form.
double hjb_first_order_check(const InsuranceModel& model, const InsuranceSolution& solution);

// Surplus path on an even grid; absorbed (stopped) at the first value <= 0.
struct SurplusPath {
  std::vector<double> times;
  std::vector<double> values;
  bool ruined = false;
  double ruin_time = 0.0;  // meaningful only when ruined
};

// Euler-Maruyama on the diffusion approximation
//   dR = [R(r + (a-r)pi) + (c - drift_claims)] dt + sqrt(R^2 b^2 pi^2 + sigma_bar^2) dW,
// absorbing at the first grid value <= 0.
SurplusPath simulate_surplus_diffusion(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                       std::uint64_t seed);

// Jump surplus: claims sampled from the compound model; between claims the
// invested part follows the exact log-normal factor of
//   dR = R[(r + (a-r)pi) dt + pi b dW]
// while the premium accrues by an Euler term c*dt per substep (operator
// splitting). Claims are applied at their exact epochs; absorption is checked
// at grid points and at claim epochs.
SurplusPath simulate_surplus_jump(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                  std::uint64_t seed);

// Same, with an injected claim path (for controlled scenarios and tests).
SurplusPath simulate_surplus_jump(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                  std::uint64_t seed, const MarkedEventPath& claims);

enum class SurplusMode { diffusion, jump };

struct RuinEstimate {
  double probability = 0.0;
  double std_error = 0.0;
  int n_paths = 0;
};

// Fraction of paths absorbed before the horizon, with binomial standard error.
RuinEstimate ruin_probability_mc(const InsuranceModel& model, double pi, double horizon, int n_paths,
                                 int n_steps, std::uint64_t seed, SurplusMode mode);

}  // namespace hawkesim
