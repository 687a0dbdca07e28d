#include "hawkesim/merton_insurance.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hawkesim/errors.hpp"
#include "hawkesim/rng.hpp"

namespace hawkesim {

InsuranceModel::InsuranceModel(double u_, double c_, GCHPModel claims_, double asset_drift_,
                               double asset_vol_, double r_)
    : u(u_),
      c(c_),
      claims(std::move(claims_)),
      asset_drift(asset_drift_),
      asset_vol(asset_vol_),
      r(r_),
      claims_params(diffusion_params(claims)) {
  if (!(u > 0.0)) throw std::invalid_argument("InsuranceModel: u must be > 0");
  if (!(asset_vol > 0.0)) throw std::invalid_argument("InsuranceModel: asset_vol must be > 0");
  if (!(r >= 0.0)) throw std::invalid_argument("InsuranceModel: r must be >= 0");
  if (!std::isfinite(c) || !std::isfinite(asset_drift))
    throw std::invalid_argument("InsuranceModel: non-finite coefficient");
  for (double m : claims.chain.marks()) {
    if (m < 0.0) throw std::invalid_argument("InsuranceModel: claim marks must be >= 0");
  }
  if (!(c > claims_params.drift))
    throw std::invalid_argument("InsuranceModel: safety loading requires c > a* lambda0/(1 - mu_hat)");
}

double theta(const InsuranceModel& model) { return model.u * model.r + model.safety_loading_margin(); }

namespace {

// Shared closed form; th > 0 is guaranteed by safety loading and r >= 0.
double p_root(double th, double sigma_bar_sq, double excess, double b) {
  return (th + std::sqrt(th * th + sigma_bar_sq * excess * excess / (b * b))) / sigma_bar_sq;
}

double pi_closed_form(double th, double sigma_bar_sq, double excess, double u, double b) {
  const double root = std::sqrt(th * th * b * b + sigma_bar_sq * excess * excess);
  return sigma_bar_sq * excess / (u * b * (th * b + root));
}

}  // namespace

double solve_p(const InsuranceModel& model) {
  const double sb2 = model.claims_params.sigma_bar * model.claims_params.sigma_bar;
  if (sb2 == 0.0) throw ZeroVolatility("solve_p: claim volatility sigma_bar is zero");
  return p_root(theta(model), sb2, model.asset_drift - model.r, model.asset_vol);
}

InsuranceSolution optimal_fraction_insurance(const InsuranceModel& model) {
  InsuranceSolution sol;
  sol.theta = theta(model);
  sol.p = solve_p(model);
  const double sb2 = model.claims_params.sigma_bar * model.claims_params.sigma_bar;
  sol.p_constraint_ok = sol.p > 0.0 && sol.p < 2.0 * model.u * model.r / sb2;
  sol.pi = pi_closed_form(sol.theta, sb2, model.asset_drift - model.r, model.u, model.asset_vol);
  return sol;
}

double poisson_optimal_fraction(double lambda0, double mean, double second_moment, double c, double u,
                                double r, double a, double b) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("poisson_optimal_fraction: lambda0 must be > 0");
  if (!(second_moment > 0.0))
    throw std::invalid_argument("poisson_optimal_fraction: second moment must be > 0");
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson_optimal_fraction: mean must be >= 0");
  if (!(u > 0.0) || !(b > 0.0) || !(r >= 0.0))
    throw std::invalid_argument("poisson_optimal_fraction: invalid market parameter");
  const double drift = lambda0 * mean;
  if (!(c > drift)) throw std::invalid_argument("poisson_optimal_fraction: safety loading requires c > lambda0*mean");
  const double sb2 = lambda0 * second_moment;
  const double th = u * r + (c - drift);
  return pi_closed_form(th, sb2, a - r, u, b);
}

GeneratorCoefficients generator_coefficients(const InsuranceModel& model, double pi, double x) {
  GeneratorCoefficients out;
  out.first_order = x * (model.r + (model.asset_drift - model.r) * pi) + model.safety_loading_margin();
  const double sb = model.claims_params.sigma_bar;
  const double xbpi = x * model.asset_vol * pi;
  out.second_order = 0.5 * (xbpi * xbpi + sb * sb);
  return out;
}

double hjb_first_order_check(const InsuranceModel& model, const InsuranceSolution& solution) {
  const double x = model.u;
  const double excess = model.asset_drift - model.r;
  const double b2 = model.asset_vol * model.asset_vol;
  // h(pi) = x(a-r)pi - (p/2) x^2 b^2 pi^2
  const double h_prime = x * excess - solution.p * x * x * b2 * solution.pi;
  const double argmax = excess / (x * solution.p * b2);
  return std::max(std::fabs(h_prime), std::fabs(argmax - solution.pi));
}

SurplusPath simulate_surplus_diffusion(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                       std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("simulate_surplus_diffusion: horizon must be > 0");
  if (n_steps < 1) throw std::invalid_argument("simulate_surplus_diffusion: n_steps must be >= 1");
  const double dt = horizon / n_steps;
  const double sdt = std::sqrt(dt);
  const double growth = model.r + (model.asset_drift - model.r) * pi;
  const double inflow = model.safety_loading_margin();
  const double sb2 = model.claims_params.sigma_bar * model.claims_params.sigma_bar;
  const double bpi = model.asset_vol * pi;
  Rng rng = make_rng(seed);
  SurplusPath path;
  path.times.reserve(n_steps + 1);
  path.values.reserve(n_steps + 1);
  double x = model.u;
  path.times.push_back(0.0);
  path.values.push_back(x);
  for (int k = 1; k <= n_steps; ++k) {
    const double vol = std::sqrt(x * x * bpi * bpi + sb2);
    x += (x * growth + inflow) * dt + vol * sdt * standard_normal(rng);
    path.times.push_back(k * dt);
    path.values.push_back(x);
    if (x <= 0.0) {
      path.ruined = true;
      path.ruin_time = k * dt;
      break;
    }
  }
  return path;
}

namespace {
constexpr std::uint64_t kStreamClaims = 11;
constexpr std::uint64_t kStreamAsset = 12;

// Exact log-normal factor of the invested surplus over a substep.
inline double geometric_step(double x, double h, double growth, double bpi, Rng& rng) {
  if (h <= 0.0) return x;
  return x * std::exp((growth - 0.5 * bpi * bpi) * h + bpi * std::sqrt(h) * standard_normal(rng));
}
}  // namespace

SurplusPath simulate_surplus_jump(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                  std::uint64_t seed, const MarkedEventPath& claims) {
  if (!(horizon > 0.0)) throw std::invalid_argument("simulate_surplus_jump: horizon must be > 0");
  if (n_steps < 1) throw std::invalid_argument("simulate_surplus_jump: n_steps must be >= 1");
  const double dt = horizon / n_steps;
  const double growth = model.r + (model.asset_drift - model.r) * pi;
  const double bpi = model.asset_vol * pi;
  Rng rng = make_rng(derive_seed(seed, kStreamAsset));

  SurplusPath path;
  path.times.reserve(n_steps + 1);
  path.values.reserve(n_steps + 1);
  double x = model.u;
  double t = 0.0;
  std::size_t next_claim = 0;
  path.times.push_back(0.0);
  path.values.push_back(x);
  for (int k = 1; k <= n_steps; ++k) {
    const double t_next = k == n_steps ? horizon : k * dt;
    while (next_claim < claims.times.size() && claims.times[next_claim] <= t_next) {
      const double tc = claims.times[next_claim];
      x = geometric_step(x, tc - t, growth, bpi, rng) + model.c * (tc - t);
      x -= claims.marks[next_claim];
      t = tc;
      ++next_claim;
      if (x <= 0.0) {
        path.times.push_back(t);
        path.values.push_back(x);
        path.ruined = true;
        path.ruin_time = t;
        return path;
      }
    }
    x = geometric_step(x, t_next - t, growth, bpi, rng) + model.c * (t_next - t);
    t = t_next;
    path.times.push_back(t);
    path.values.push_back(x);
    if (x <= 0.0) {
      path.ruined = true;
      path.ruin_time = t;
      return path;
    }
  }
  return path;
}

SurplusPath simulate_surplus_jump(const InsuranceModel& model, double pi, double horizon, int n_steps,
                                  std::uint64_t seed) {
  const MarkedEventPath claims = simulate_gchp(model.claims, horizon, derive_seed(seed, kStreamClaims));
  return simulate_surplus_jump(model, pi, horizon, n_steps, seed, claims);
}

RuinEstimate ruin_probability_mc(const InsuranceModel& model, double pi, double horizon, int n_paths,
                                 int n_steps, std::uint64_t seed, SurplusMode mode) {
  if (n_paths < 1) throw std::invalid_argument("ruin_probability_mc: n_paths must be >= 1");
  int ruined = 0;
  for (int i = 0; i < n_paths; ++i) {
    const std::uint64_t s = path_seed(seed, static_cast<std::uint64_t>(i));
    const SurplusPath p = mode == SurplusMode::diffusion
                              ? simulate_surplus_diffusion(model, pi, horizon, n_steps, s)
                              : simulate_surplus_jump(model, pi, horizon, n_steps, s);
    if (p.ruined) ++ruined;
  }
  RuinEstimate est;
  est.n_paths = n_paths;
  est.probability = static_cast<double>(ruined) / n_paths;
  est.std_error = std::sqrt(est.probability * (1.0 - est.probability) / n_paths);
  return est;
}

}  // namespace hawkesim
