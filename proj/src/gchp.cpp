#include "hawkesim/gchp.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hawkesim/errors.hpp"
#include "hawkesim/rng.hpp"

namespace hawkesim {

GCHPModel::GCHPModel(HawkesParams hawkes_, MarkovChainSpec chain_, double s0_,
                     std::optional<int> initial_state_)
    : hawkes(std::move(hawkes_)), chain(std::move(chain_)), s0(s0_), initial_state(initial_state_) {
  if (!std::isfinite(s0)) throw std::invalid_argument("GCHPModel: s0 must be finite");
  if (!is_ergodic(chain)) throw NonErgodicChain("GCHPModel: mark chain must be ergodic");
  if (initial_state && (*initial_state < 1 || *initial_state > chain.n()))
    throw InvalidState("GCHPModel: initial state outside 1..n");
}

double a_star(const MarkovChainSpec& chain, const StationaryDistribution& pi) {
  double s = 0.0;
  for (int i = 0; i < chain.n(); ++i) s += pi.pi[i] * chain.marks()[i];
  return s;
}

double sigma_squared(const MarkovChainSpec& chain) {
  const StationaryDistribution pi = stationary_distribution(chain);
  const double as = a_star(chain, pi);
  const int n = chain.n();
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = chain.marks()[i] - as;
  const std::vector<double> g = fundamental_solve(chain, pi, b);
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double quad = 0.0;
    double lin = 0.0;
    for (int j = 0; j < n; ++j) {
      const double diff = g[j] - g[i];
      const double pij = chain.prob(i + 1, j + 1);
      quad += diff * diff * pij;
      lin += diff * pij;
    }
    const double v = b[i] * b[i] + quad - 2.0 * b[i] * lin;
    s2 += pi.pi[i] * v;
  }
  return s2 < 0.0 ? 0.0 : s2;  // clamp rounding noise; the limit variance is >= 0
}

DiffusionParams diffusion_params(const GCHPModel& model) {
  DiffusionParams out;
  out.lambda0 = model.hawkes.lambda0;
  out.mu_hat = branching_ratio(model.hawkes.kernel);
  const double rate = out.lambda0 / (1.0 - out.mu_hat);
  const StationaryDistribution pi = stationary_distribution(model.chain);
  out.a_star = a_star(model.chain, pi);
  out.sigma = std::sqrt(sigma_squared(model.chain));
  out.sigma_star = out.sigma * std::sqrt(rate);
  out.drift = out.a_star * rate;
  const double denom3 = std::pow(1.0 - out.mu_hat, 3);
  out.sigma_bar = std::sqrt(out.sigma_star * out.sigma_star +
                            out.a_star * out.a_star * out.lambda0 / denom3);
  return out;
}

TwoStateParams two_state_params(double delta, double p, double p_prime) {
  if (!(delta > 0.0)) throw std::invalid_argument("two_state_params: delta must be > 0");
  if (!(p >= 0.0) || p > 1.0 || !(p_prime >= 0.0) || p_prime > 1.0)
    throw std::invalid_argument("two_state_params: stay probabilities must lie in [0, 1]");
  if (p == 1.0 && p_prime == 1.0) throw DegenerateChain("two_state_params: p = p' = 1");
  const double pi = (1.0 - p_prime) / (2.0 - p - p_prime);
  TwoStateParams out;
  out.a_star = delta * (2.0 * pi - 1.0);
  const double d = p + p_prime - 2.0;
  out.sigma_sq = 4.0 * delta * delta * ((1.0 - p_prime + pi * (p_prime - p)) / (d * d) - pi * (1.0 - pi));
  return out;
}

namespace {
constexpr std::uint64_t kStreamTimes = 0;
constexpr std::uint64_t kStreamInitial = 1;
constexpr std::uint64_t kStreamChain = 2;
}  // namespace

MarkedEventPath simulate_gchp(const GCHPModel& model, double horizon, std::uint64_t seed) {
  const EventPath events = simulate_hawkes(model.hawkes, horizon, derive_seed(seed, kStreamTimes));
  int start;
  if (model.initial_state) {
    start = *model.initial_state;
  } else {
    const StationaryDistribution pi = stationary_distribution(model.chain);
    Rng rng = make_rng(derive_seed(seed, kStreamInitial));
    const double u = uniform01(rng);
    double cum = 0.0;
    start = model.chain.n();
    for (int i = 1; i <= model.chain.n(); ++i) {
      cum += pi.pi[i - 1];
      if (u < cum) {
        start = i;
        break;
      }
    }
  }
  const std::vector<int> states = simulate_chain(model.chain, static_cast<std::int64_t>(events.count()),
                                                 start, derive_seed(seed, kStreamChain));
  MarkedEventPath path;
  path.horizon = horizon;
  path.s0 = model.s0;
  path.times = events.times();
  path.states = states;
  path.marks.reserve(states.size());
  path.cumulative.reserve(states.size());
  double run = model.s0;
  for (int x : states) {
    const double m = model.chain.mark(x);
    run += m;
    path.marks.push_back(m);
    path.cumulative.push_back(run);
  }
  return path;
}

double fclt_statistic_gchp(const MarkedEventPath& path, const DiffusionParams& params) {
  if (params.sigma_bar == 0.0) throw SigmaBarZero("fclt_statistic_gchp: sigma_bar is zero");
  const double t = path.horizon;
  return (path.terminal() - path.s0 - params.drift * t) / (params.sigma_bar * std::sqrt(t));
}

SampledPath approximate_diffusion_path(const DiffusionParams& params, double s0, double horizon, double dt,
                                       std::uint64_t seed) {
  if (!(dt > 0.0) || !(horizon >= dt))
    throw std::invalid_argument("approximate_diffusion_path: need 0 < dt <= horizon");
  const auto n = static_cast<std::int64_t>(std::llround(horizon / dt));
  const std::int64_t steps = n < 1 ? 1 : n;
  const double h = horizon / static_cast<double>(steps);
  const double sh = std::sqrt(h);
  Rng rng = make_rng(seed);
  SampledPath path;
  path.times.reserve(steps + 1);
  path.values.reserve(steps + 1);
  double x = s0;
  path.times.push_back(0.0);
  path.values.push_back(x);
  for (std::int64_t k = 1; k <= steps; ++k) {
    x += params.drift * h + params.sigma_bar * sh * standard_normal(rng);
    path.times.push_back(static_cast<double>(k) * h);
    path.values.push_back(x);
  }
  return path;
}

}  // namespace hawkesim
