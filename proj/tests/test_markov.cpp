#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hawkesim/errors.hpp"
#include "hawkesim/markov.hpp"
#include "hawkesim/rng.hpp"

using namespace hawkesim;

namespace {

using Matrix = std::vector<std::vector<double>>;

// Reference ergodicity test: supp(P^64) is all-positive iff the chain is
// irreducible and aperiodic (64 exceeds the primitivity index for n <= 4).
bool ergodic_by_matrix_power(const Matrix& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<bool>> b(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = p[i][j] > 0.0;
  for (int square = 0; square < 6; ++square) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (b[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (b[k][j]) next[i][j] = true;
    b = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!b[i][j]) return false;
  return true;
}

Matrix random_positive_matrix(int n, Rng& rng) {
  Matrix p(n, std::vector<double>(n));
  for (auto& row : p) {
    double sum = 0.0;
    for (double& v : row) {
      v = 0.05 + uniform01(rng);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return p;
}

}  // namespace

TEST_CASE("constructor validates shape and stochasticity") {
  CHECK_THROWS_AS(MarkovChainSpec({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MarkovChainSpec({{1.0, 0.0}}, {0.0}), std::invalid_argument);          // not square
  CHECK_THROWS_AS(MarkovChainSpec({{0.5, 0.5}, {0.5, 0.5}}, {0.0}), std::invalid_argument);  // marks length
  CHECK_THROWS_AS(MarkovChainSpec({{0.6, 0.5}, {0.5, 0.5}}, {0.0, 0.0}), std::invalid_argument);  // row sum
  CHECK_THROWS_AS(MarkovChainSpec({{1.2, -0.2}, {0.5, 0.5}}, {0.0, 0.0}), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(MarkovChainSpec({{0.5, 0.5}, {0.5, 0.5}}, {nan, 0.0}), std::invalid_argument);
}

TEST_CASE("accessors are 1-based") {
  const MarkovChainSpec chain({{0.6, 0.4}, {0.3, 0.7}}, {1.0, -1.0});
  CHECK(chain.n() == 2);
  CHECK(chain.prob(1, 2) == 0.4);
  CHECK(chain.prob(2, 1) == 0.3);
  CHECK(chain.mark(1) == 1.0);
  CHECK(chain.mark(2) == -1.0);
}

TEST_CASE("is_ergodic on known cases") {
  CHECK(is_ergodic(MarkovChainSpec({{1.0}}, {0.0})));
  CHECK(is_ergodic(MarkovChainSpec({{0.5, 0.5}, {0.5, 0.5}}, {0.0, 0.0})));
  CHECK_FALSE(is_ergodic(MarkovChainSpec({{0.0, 1.0}, {1.0, 0.0}}, {0.0, 0.0})));  // period 2
  CHECK_FALSE(is_ergodic(MarkovChainSpec({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0})));  // reducible
  CHECK_FALSE(is_ergodic(MarkovChainSpec({{0.5, 0.5}, {0.0, 1.0}}, {0.0, 0.0})));  // absorbing state
  // 3-cycle is periodic.
  CHECK_FALSE(is_ergodic(
      MarkovChainSpec({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}, {0.0, 0.0, 0.0})));
  // A self-loop breaks the period.
  CHECK(is_ergodic(
      MarkovChainSpec({{0.5, 0.5, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}}, {0.0, 0.0, 0.0})));
}

TEST_CASE("is_ergodic agrees with the matrix-power definition") {
  const std::vector<std::vector<double>> rows2 = {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
  for (std::size_t i = 0; i < rows2.size(); ++i) {
    for (std::size_t j = 0; j < rows2.size(); ++j) {
      const Matrix p = {rows2[i], rows2[j]};
      CHECK(is_ergodic(MarkovChainSpec(p, {0.0, 0.0})) == ergodic_by_matrix_power(p));
    }
  }
  const std::vector<std::vector<double>> rows3 = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
                                                  {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}};
  for (std::size_t i = 0; i < rows3.size(); ++i) {
    for (std::size_t j = 0; j < rows3.size(); ++j) {
      for (std::size_t k = 0; k < rows3.size(); ++k) {
        const Matrix p = {rows3[i], rows3[j], rows3[k]};
        CHECK(is_ergodic(MarkovChainSpec(p, {0.0, 0.0, 0.0})) == ergodic_by_matrix_power(p));
      }
    }
  }
}

TEST_CASE("stationary distribution of the reference two-state chain") {
  const MarkovChainSpec chain({{0.6, 0.4}, {0.3, 0.7}}, {1.0, -1.0});
  const StationaryDistribution pi = stationary_distribution(chain);
  CHECK(pi.pi[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
  CHECK(pi.pi[1] == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(pi[1] == pi.pi[0]);  // 1-based accessor
}

TEST_CASE("stationary distribution satisfies balance on random chains") {
  Rng rng = make_rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 5.0);
    const Matrix p = random_positive_matrix(n, rng);
    const MarkovChainSpec chain(p, std::vector<double>(n, 0.0));
    const StationaryDistribution pi = stationary_distribution(chain);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += pi.pi[i] * chain.prob(i + 1, j + 1);
      CHECK(std::fabs(s - pi.pi[j]) < 1e-12);
      CHECK(pi.pi[j] >= 0.0);
      sum += pi.pi[j];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("stationary distribution rejects non-ergodic chains") {
  CHECK_THROWS_AS(stationary_distribution(MarkovChainSpec({{0.0, 1.0}, {1.0, 0.0}}, {0.0, 0.0})),
                  NonErgodicChain);
  CHECK_THROWS_AS(stationary_distribution(MarkovChainSpec({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0})),
                  NonErgodicChain);
}

TEST_CASE("simulate_chain follows a deterministic cycle") {
  const MarkovChainSpec cycle({{0.0, 1.0}, {1.0, 0.0}}, {0.0, 0.0});
  const std::vector<int> out = simulate_chain(cycle, 6, 1, 42);
  CHECK(out == std::vector<int>{2, 1, 2, 1, 2, 1});
}

TEST_CASE("simulate_chain is deterministic in the seed and validates the start") {
  const MarkovChainSpec chain({{0.6, 0.4}, {0.3, 0.7}}, {1.0, -1.0});
  CHECK(simulate_chain(chain, 100, 1, 7) == simulate_chain(chain, 100, 1, 7));
  CHECK(simulate_chain(chain, 100, 1, 7) != simulate_chain(chain, 100, 1, 8));
  CHECK_THROWS_AS(simulate_chain(chain, 10, 0, 1), InvalidState);
  CHECK_THROWS_AS(simulate_chain(chain, 10, 3, 1), InvalidState);
  CHECK(simulate_chain(chain, 0, 1, 1).empty());
}

TEST_CASE("simulate_chain occupation frequencies approach the stationary law") {
  const MarkovChainSpec chain({{0.6, 0.4}, {0.3, 0.7}}, {1.0, -1.0});
  const std::int64_t n = 200000;
  const std::vector<int> out = simulate_chain(chain, n, 1, 2023);
  std::int64_t ones = 0;
  for (int x : out) ones += x == 1;
  CHECK(std::fabs(static_cast<double>(ones) / static_cast<double>(n) - 3.0 / 7.0) < 0.01);
}

TEST_CASE("fundamental_solve residual and the iid-rows shortcut") {
  Rng rng = make_rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 4.0);
    const Matrix p = random_positive_matrix(n, rng);
    const MarkovChainSpec chain(p, std::vector<double>(n, 0.0));
    const StationaryDistribution pi = stationary_distribution(chain);
    std::vector<double> b(n);
    for (double& v : b) v = -1.0 + 2.0 * uniform01(rng);
    const std::vector<double> g = fundamental_solve(chain, pi, b);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += (chain.prob(i + 1, j + 1) + pi.pi[j] - (i == j ? 1.0 : 0.0)) * g[j];
      CHECK(std::fabs(s - b[i]) < 1e-11);
    }
  }

  // With P = Pi* (rows equal to the stationary law) and centered b, g = -b.
  const std::vector<double> pr = {0.2, 0.5, 0.3};
  const std::vector<double> a = {1.0, 4.0, -2.0};
  const MarkovChainSpec iid({pr, pr, pr}, a);
  const StationaryDistribution pi = stationary_distribution(iid);
  double as = 0.0;
  for (int i = 0; i < 3; ++i) as += pi.pi[i] * a[i];
  std::vector<double> b(3);
  for (int i = 0; i < 3; ++i) b[i] = a[i] - as;
  const std::vector<double> g = fundamental_solve(iid, pi, b);
  for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(-b[i]).epsilon(1e-12));
}
