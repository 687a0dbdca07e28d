#pragma once

#include <cstdint>
#include <vector>

namespace hawkesim {

// Excitation kernel mu(t) of a self-exciting counting process. Two cases:
// Zero (plain Poisson arrivals) and Exponential alpha*exp(-beta*t) with
// branching ratio alpha/beta < 1 so the process stays subcritical.
class ExcitationKernel {
 public:
  static ExcitationKernel zero() { return ExcitationKernel(true, 0.0, 1.0); }
  static ExcitationKernel exponential(double alpha, double beta);

  bool is_zero() const { return zero_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // mu(t) for t >= 0.
  double value(double t) const;

 private:
  ExcitationKernel(bool zero, double alpha, double beta) : zero_(zero), alpha_(alpha), beta_(beta) {}
  bool zero_;
  double alpha_;
  double beta_;
};

// Integral of the kernel, mu_hat = alpha/beta (0 for the Zero kernel).
double branching_ratio(const ExcitationKernel& kernel);

// Baseline intensity plus kernel.
struct HawkesParams {
  HawkesParams(double lambda0, ExcitationKernel kernel);
  double lambda0;
  ExcitationKernel kernel;
};

// Event times of one realization: strictly increasing, all in (0, horizon].
class EventPath {
 public:
  EventPath(double horizon, std::vector<double> times);
  double horizon() const { return horizon_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t count() const { return times_.size(); }

 private:
  double horizon_;
  std::vector<double> times_;
};

// lambda(t) = lambda0 + sum_{t_k < t} mu(t - t_k); the sum is strict, so the
// value is the left limit at event times.
double intensity_at(const HawkesParams& params, const EventPath& history, double t);

// Ogata thinning. The dominating rate on each inter-candidate interval is the
// current intensity just after the last processed point, which bounds the
// decaying intensity until the next event; on acceptance the intensity is
// updated by the O(1) recursion lambda(t+) = lambda0 + (lambda(t_k+) -
// lambda0)*exp(-beta*(t - t_k)) + alpha.
EventPath simulate_hawkes(const HawkesParams& params, double horizon, std::uint64_t seed);

// N(T)/T, the empirical rate whose long-run limit is lambda0/(1 - mu_hat).
double lln_statistic_hp(const EventPath& path);

// (N(T) - lambda0*T/(1-mu_hat)) / sqrt(lambda0*T/(1-mu_hat)^3); asymptotically
// standard normal.
double fclt_statistic_hp(const EventPath& path, const HawkesParams& params);

}  // namespace hawkesim
