#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hawkesim/rng.hpp"
#include "hawkesim/stats.hpp"

using namespace hawkesim;

namespace {

// Standard normal quantile by bisection on normal_cdf; enough accuracy for
// constructing near-perfect samples.
double normal_quantile(double q) {
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < q) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal_cdf reference values") {
  CHECK(std::fabs(normal_cdf(0.0) - 0.5) < 1e-7);
  CHECK(std::fabs(normal_cdf(1.0) - 0.84134474606854293) < 1e-7);
  CHECK(std::fabs(normal_cdf(1.96) - 0.97500210485177952) < 1e-7);
  CHECK(std::fabs(normal_cdf(-1.96) - 0.02499789514822048) < 1e-7);
  CHECK(std::fabs(normal_cdf(3.0) - 0.99865010196836990) < 1e-7);
  CHECK(normal_cdf(8.0) > 1.0 - 1e-7);
  CHECK(normal_cdf(-8.0) < 1e-7);
  // Symmetry is exact by construction.
  for (double x : {0.1, 0.7, 1.3, 2.9}) {
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }
  // Monotone on a coarse grid.
  double prev = 0.0;
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double f = normal_cdf(x);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("ks_statistic on a quantile-constructed sample") {
  const std::size_t n = 1000;
  std::vector<double> sample(n);
  for (std::size_t k = 0; k < n; ++k) {
    sample[k] = normal_quantile((static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  CHECK(ks_statistic(sample) <= 0.5 / static_cast<double>(n) + 1e-6);
}

TEST_CASE("ks_statistic on degenerate samples") {
  CHECK(ks_statistic(std::vector<double>(50, 0.0)) >= 0.5);
  CHECK(ks_statistic(std::vector<double>(50, 100.0)) > 0.99);
  CHECK_THROWS_AS(ks_statistic({}), std::invalid_argument);
}

TEST_CASE("ks_statistic is permutation invariant") {
  Rng rng = make_rng(5);
  std::vector<double> sample(500);
  for (double& v : sample) v = standard_normal(rng);
  const double d = ks_statistic(sample);
  std::shuffle(sample.begin(), sample.end(), rng);
  CHECK(ks_statistic(sample) == d);
}

TEST_CASE("ks_critical_value matches the Smirnov formula") {
  CHECK(ks_critical_value(0.01, 2000) * std::sqrt(2000.0) ==
        doctest::Approx(1.6276236307187293).epsilon(1e-14));
  CHECK(ks_critical_value(0.05, 100) ==
        doctest::Approx(std::sqrt(-0.5 * std::log(0.025)) / 10.0).epsilon(1e-14));
  CHECK_THROWS_AS(ks_critical_value(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(ks_critical_value(1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(ks_critical_value(0.05, 0), std::invalid_argument);
}

TEST_CASE("standard normal draws stay below the 1% critical value in most batches") {
  // KS-distribution oracle: at level 0.01 about 99% of batches pass; with 40
  // fixed-seed batches a floor of 36 has huge slack.
  const std::size_t n = 2000;
  const double crit = ks_critical_value(0.01, n);
  int passes = 0;
  for (int batch = 0; batch < 40; ++batch) {
    Rng rng = make_rng(900 + static_cast<std::uint64_t>(batch));
    std::vector<double> sample(n);
    for (double& v : sample) v = standard_normal(rng);
    if (ks_statistic(sample) < crit) ++passes;
  }
  CHECK(passes >= 36);
}

TEST_CASE("normality_check verdicts") {
  const std::size_t n = 2000;
  std::vector<double> exact(n);
  for (std::size_t k = 0; k < n; ++k) {
    exact[k] = normal_quantile((static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  const NormalityReport good = normality_check(exact, 0.01);
  CHECK(good.pass);
  CHECK(good.n == n);
  CHECK(good.ks < good.ks_critical);
  CHECK(std::fabs(good.mean) < 0.01);
  CHECK(good.variance == doctest::Approx(1.0).epsilon(0.01));

  const NormalityReport zeros = normality_check(std::vector<double>(n, 0.0), 0.01);
  CHECK_FALSE(zeros.pass);

  // Right mean and variance but the wrong shape must fail on the KS distance.
  std::vector<double> uniform(n);
  for (std::size_t k = 0; k < n; ++k) {
    uniform[k] = std::sqrt(12.0) * ((static_cast<double>(k) + 0.5) / static_cast<double>(n) - 0.5);
  }
  CHECK_FALSE(normality_check(uniform, 0.01).pass);

  CHECK_THROWS_AS(normality_check(std::vector<double>(99, 0.0), 0.01), std::invalid_argument);
}
