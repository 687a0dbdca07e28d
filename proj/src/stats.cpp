#include "hawkesim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkesim {

double normal_cdf(double x) {
  // Abramowitz & Stegun 26.2.17; |error| < 7.5e-8.
  constexpr double p = 0.2316419;
  constexpr double b1 = 0.319381530;
  constexpr double b2 = -0.356563782;
  constexpr double b3 = 1.781477937;
  constexpr double b4 = -1.821255978;
  constexpr double b5 = 1.330274429;
  constexpr double inv_sqrt_2pi = 0.39894228040143268;
  const double ax = std::fabs(x);
  const double t = 1.0 / (1.0 + p * ax);
  const double poly = ((((b5 * t + b4) * t + b3) * t + b2) * t + b1) * t;
  const double tail = inv_sqrt_2pi * std::exp(-0.5 * ax * ax) * poly;
  return x >= 0.0 ? 1.0 - tail : tail;
}

double ks_statistic(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf(sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double ks_critical_value(double level, std::size_t n) {
  if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("ks_critical_value: level in (0,1)");
  if (n == 0) throw std::invalid_argument("ks_critical_value: n must be positive");
  return std::sqrt(-0.5 * std::log(level / 2.0)) / std::sqrt(static_cast<double>(n));
}

NormalityReport normality_check(const std::vector<double>& sample, double level) {
  if (sample.size() < 100) throw std::invalid_argument("normality_check: need at least 100 samples");
  NormalityReport rep;
  rep.n = sample.size();
  rep.ks = ks_statistic(sample);
  rep.ks_critical = ks_critical_value(level, sample.size());
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= static_cast<double>(sample.size());
  double var = 0.0;
  for (double v : sample) var += (v - mean) * (v - mean);
  var /= static_cast<double>(sample.size() - 1);
  rep.mean = mean;
  rep.variance = var;
  rep.pass = rep.ks < rep.ks_critical && std::fabs(mean) < 0.15 && var > 0.8 && var < 1.25;
  return rep;
}

}  // namespace hawkesim
