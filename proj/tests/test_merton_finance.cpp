#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hawkesim/errors.hpp"
#include "hawkesim/merton_finance.hpp"
#include "hawkesim/rng.hpp"

using namespace hawkesim;

namespace {

// Zero-kernel two-state iid model calibrated to hit (drift, sigma_bar) exactly
// at lambda = 1: marks drift +- sqrt(sigma_bar^2 - drift^2).
GCHPModel calibrated_model(double drift, double sigma_bar) {
  const double d = std::sqrt(sigma_bar * sigma_bar - drift * drift);
  return GCHPModel(HawkesParams(1.0, ExcitationKernel::zero()),
                   MarkovChainSpec({{0.5, 0.5}, {0.5, 0.5}}, {drift - d, drift + d}), 0.0);
}

}  // namespace

TEST_CASE("calibrated market hits the target parameters") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  CHECK(market.params.drift == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(market.params.sigma_bar == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(market.mu_e() == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("market validation") {
  const GCHPModel model = calibrated_model(0.08, 0.2);
  CHECK_THROWS_AS(FinanceMarket(0.0, model, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FinanceMarket(0.0, model, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(FinanceMarket(0.0, model, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FinanceMarket(std::nan(""), model, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form optimal fraction") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  const FinanceStrategy strat = optimal_fraction_finance(market.params, market.r);
  CHECK(std::fabs(strat.pi_star - 2.5) < 1e-12);

  // Nonzero r shifts the numerator: (mu_e - r)/sigma_bar^2.
  const FinanceStrategy with_r = optimal_fraction_finance(market.params, 0.02);
  CHECK(with_r.pi_star == doctest::Approx((0.1 - 0.02) / 0.04).epsilon(1e-13));

  DiffusionParams flat;
  flat.sigma_bar = 0.0;
  CHECK_THROWS_AS(optimal_fraction_finance(flat, 0.0), SigmaBarZero);
}

TEST_CASE("expected_log_utility closed form") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  // At pi* = 2.5, T = 1, x0 = 1: 2.5*0.1 - 0.5*6.25*0.04 = 0.125.
  CHECK(expected_log_utility(market, 2.5, 1.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(expected_log_utility(market, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));

  // x0 scales additively, horizon multiplicatively.
  const FinanceMarket scaled(0.0, calibrated_model(0.08, 0.2), 2.0);
  CHECK(expected_log_utility(scaled, 2.5, 3.0) ==
        doctest::Approx(std::log(2.0) + 3.0 * 0.125).epsilon(1e-13));
  CHECK_THROWS_AS(expected_log_utility(market, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("simulate_wealth: all-bond portfolio compounds at r") {
  const FinanceMarket market(0.03, calibrated_model(0.08, 0.2), 1.0);
  const SampledPath path = simulate_wealth(market, 0.0, 2.0, 400, 5);
  REQUIRE(path.values.size() == 401);
  CHECK(path.values.front() == 1.0);
  CHECK(path.values.back() == doctest::Approx(std::exp(0.03 * 2.0)).epsilon(1e-12));
  CHECK(path.times.back() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("simulate_wealth single step matches the log-normal closed form") {
  const FinanceMarket market(0.01, calibrated_model(0.08, 0.2), 1.5);
  const double pi = 1.7;
  const std::uint64_t seed = 2718;
  const SampledPath path = simulate_wealth(market, pi, 1.0, 1, seed);
  REQUIRE(path.values.size() == 2);
  Rng rng = make_rng(seed);
  const double z = standard_normal(rng);
  const double sb = market.params.sigma_bar;
  const double expected =
      1.5 * std::exp((0.01 + pi * (market.mu_e() - 0.01) - 0.5 * pi * pi * sb * sb) + pi * sb * z);
  CHECK(path.values.back() == expected);
}

TEST_CASE("simulate_wealth determinism and validation") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  CHECK(simulate_wealth(market, 1.0, 1.0, 16, 9).values == simulate_wealth(market, 1.0, 1.0, 16, 9).values);
  CHECK_THROWS_AS(simulate_wealth(market, 1.0, 0.0, 16, 9), std::invalid_argument);
  CHECK_THROWS_AS(simulate_wealth(market, 1.0, 1.0, 0, 9), std::invalid_argument);
}

TEST_CASE("grid search recovers the closed-form optimum") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.25 * i);
  const GridSearchResult res = grid_search_optimal_pi(market, grid, 1.0, 10000, 99);
  CHECK(res.best_pi == 2.5);
  REQUIRE(res.points.size() == grid.size());
  const GridPoint& opt = res.points[10];
  CHECK(opt.pi == 2.5);
  CHECK(opt.utility_analytic == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(std::fabs(opt.utility_mc - 0.125) <= 3.0 * opt.std_error);
}

TEST_CASE("grid search uses common random numbers") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  const std::vector<double> grid = {1.0, 2.0, 4.0};
  const GridSearchResult res = grid_search_optimal_pi(market, grid, 1.0, 500, 17);
  // With one shared normal per path, (utility_mc - utility_analytic)/pi is the
  // same sample average sigma_bar*sqrt(T)*mean(z) for every grid entry.
  const double r0 = (res.points[0].utility_mc - res.points[0].utility_analytic) / grid[0];
  const double r1 = (res.points[1].utility_mc - res.points[1].utility_analytic) / grid[1];
  const double r2 = (res.points[2].utility_mc - res.points[2].utility_analytic) / grid[2];
  CHECK(std::fabs(r0 - r1) < 1e-12);
  CHECK(std::fabs(r0 - r2) < 1e-12);
}

TEST_CASE("grid search tie resolves to the earliest entry") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  const GridSearchResult res = grid_search_optimal_pi(market, {1.5, 1.5, 1.5}, 1.0, 100, 3);
  CHECK(res.best_pi == 1.5);
  CHECK(res.points[0].utility_mc == res.points[1].utility_mc);
}

TEST_CASE("grid search validation") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  CHECK_THROWS_AS(grid_search_optimal_pi(market, {}, 1.0, 100, 3), std::invalid_argument);
  CHECK_THROWS_AS(grid_search_optimal_pi(market, {1.0}, 1.0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(grid_search_optimal_pi(market, {1.0}, 0.0, 100, 3), std::invalid_argument);
}

TEST_CASE("stock sde coefficients") {
  const FinanceMarket market(0.0, calibrated_model(0.08, 0.2), 1.0);
  const StockSdeCoefficients sde = stock_sde_coefficients(market.params);
  CHECK(sde.drift == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(sde.vol == doctest::Approx(0.2).epsilon(1e-14));
}
