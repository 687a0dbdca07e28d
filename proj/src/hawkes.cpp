#include "hawkesim/hawkes.hpp"

#include <cmath>
#include <stdexcept>

#include "hawkesim/errors.hpp"
#include "hawkesim/rng.hpp"

namespace hawkesim {

ExcitationKernel ExcitationKernel::exponential(double alpha, double beta) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("ExcitationKernel: alpha must be >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("ExcitationKernel: beta must be > 0");
  if (!(alpha / beta < 1.0))
    throw std::invalid_argument("ExcitationKernel: branching ratio alpha/beta must be < 1");
  return ExcitationKernel(false, alpha, beta);
}

double ExcitationKernel::value(double t) const {
  if (zero_) return 0.0;
  return alpha_ * std::exp(-beta_ * t);
}

double branching_ratio(const ExcitationKernel& kernel) {
  return kernel.is_zero() ? 0.0 : kernel.alpha() / kernel.beta();
}

HawkesParams::HawkesParams(double lambda0_, ExcitationKernel kernel_) : lambda0(lambda0_), kernel(kernel_) {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
    throw std::invalid_argument("HawkesParams: lambda0 must be > 0");
}

EventPath::EventPath(double horizon, std::vector<double> times)
    : horizon_(horizon), times_(std::move(times)) {
  if (!(horizon_ > 0.0)) throw std::invalid_argument("EventPath: horizon must be > 0");
  double prev = 0.0;
  for (double t : times_) {
    if (!(t > prev) || t > horizon_)
      throw std::invalid_argument("EventPath: times must be strictly increasing within (0, horizon]");
    prev = t;
  }
}

double intensity_at(const HawkesParams& params, const EventPath& history, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("intensity_at: t must be >= 0");
  double lam = params.lambda0;
  if (params.kernel.is_zero()) return lam;
  for (double tk : history.times()) {
    if (tk >= t) break;
    lam += params.kernel.value(t - tk);
  }
  return lam;
}

EventPath simulate_hawkes(const HawkesParams& params, double horizon, std::uint64_t seed) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("simulate_hawkes: horizon must be positive and finite");
  Rng rng = make_rng(seed);
  const bool zero = params.kernel.is_zero();
  const double lam0 = params.lambda0;
  const double alpha = zero ? 0.0 : params.kernel.alpha();
  const double beta = zero ? 1.0 : params.kernel.beta();

  std::vector<double> times;
  const double mean_rate = lam0 / (1.0 - branching_ratio(params.kernel));
  times.reserve(static_cast<std::size_t>(mean_rate * horizon * 1.25) + 16);

  double t = 0.0;
  double intensity = lam0;  // lambda(t+), the rate just after the last processed point
  while (true) {
    const double bound = intensity;
    const double gap = exponential(rng, bound);
    const double cand = t + gap;
    if (cand > horizon) break;
    const double lam = zero ? lam0 : lam0 + (intensity - lam0) * std::exp(-beta * gap);
    const double u = uniform01(rng);
    if (u * bound <= lam) {
      times.push_back(cand);
      intensity = lam + alpha;
    } else {
      intensity = lam;  // rejected: the decayed value is a tighter bound
    }
    t = cand;
  }
  return EventPath(horizon, std::move(times));
}

double lln_statistic_hp(const EventPath& path) {
  return static_cast<double>(path.count()) / path.horizon();
}

double fclt_statistic_hp(const EventPath& path, const HawkesParams& params) {
  const double mu_hat = branching_ratio(params.kernel);
  const double t = path.horizon();
  const double center = params.lambda0 * t / (1.0 - mu_hat);
  const double scale = std::sqrt(params.lambda0 * t / std::pow(1.0 - mu_hat, 3));
  return (static_cast<double>(path.count()) - center) / scale;
}

}  // namespace hawkesim
