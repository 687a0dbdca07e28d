#include "hawkesim/markov.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "hawkesim/errors.hpp"
#include "hawkesim/linalg.hpp"
#include "hawkesim/rng.hpp"

namespace hawkesim {

MarkovChainSpec::MarkovChainSpec(std::vector<std::vector<double>> transition, std::vector<double> marks)
    : n_(static_cast<int>(transition.size())), a_(std::move(marks)) {
  if (n_ < 1) throw std::invalid_argument("MarkovChainSpec: empty transition matrix");
  if (a_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("MarkovChainSpec: mark vector length differs from matrix order");
  p_.reserve(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    const auto& row = transition[i];
    if (row.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("MarkovChainSpec: transition matrix is not square");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0) || v > 1.0 + 1e-12)
        throw std::invalid_argument("MarkovChainSpec: entries must lie in [0, 1]");
      sum += v;
      p_.push_back(v);
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovChainSpec: row " + std::to_string(i + 1) + " does not sum to 1");
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw std::invalid_argument("MarkovChainSpec: marks must be finite");
  }
}

namespace {

// BFS depths over the support graph; unreachable nodes get -1.
std::vector<int> bfs_depths(const MarkovChainSpec& chain, bool reversed) {
  const int n = chain.n();
  std::vector<int> depth(n, -1);
  std::queue<int> q;
  depth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      const double w = reversed ? chain.prob(v + 1, u + 1) : chain.prob(u + 1, v + 1);
      if (w > 0.0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
    }
  }
  return depth;
}

}  // namespace

bool is_ergodic(const MarkovChainSpec& chain) {
  const int n = chain.n();
  const std::vector<int> fwd = bfs_depths(chain, false);
  const std::vector<int> bwd = bfs_depths(chain, true);
  for (int i = 0; i < n; ++i) {
    if (fwd[i] < 0 || bwd[i] < 0) return false;  // reducible
  }
  // Strongly connected: the gcd of d(u)+1-d(v) over support edges is the period.
  long long g = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (chain.prob(u + 1, v + 1) > 0.0) {
        const long long delta = static_cast<long long>(fwd[u]) + 1 - fwd[v];
        g = std::gcd(g, delta < 0 ? -delta : delta);
      }
    }
  }
  return g == 1;
}

StationaryDistribution stationary_distribution(const MarkovChainSpec& chain) {
  if (!is_ergodic(chain)) throw NonErgodicChain("stationary_distribution: chain is not ergodic");
  const int n = chain.n();
  // M = P^T - I with the first row replaced by the normalization sum(pi) = 1.
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  for (int j = 0; j < n; ++j) m[j] = 1.0;
  rhs[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i) * n + j] = chain.prob(j + 1, i + 1) - (i == j ? 1.0 : 0.0);
    }
  }
  std::vector<double> pi = linalg::solve(std::move(m), std::move(rhs));

  double sum = 0.0;
  for (double& v : pi) {
    if (v < 0.0) {
      if (v < -1e-9) throw SolveFailure("stationary_distribution: negative component");
      v = 0.0;
    }
    sum += v;
  }
  for (double& v : pi) v /= sum;

  double resid = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += pi[i] * chain.prob(i + 1, j + 1);
    resid = std::max(resid, std::fabs(s - pi[j]));
  }
  if (resid > 1e-10) throw SolveFailure("stationary_distribution: residual above tolerance");
  return StationaryDistribution{std::move(pi)};
}

std::vector<int> simulate_chain(const MarkovChainSpec& chain, std::int64_t n_steps, int initial_state,
                                std::uint64_t seed) {
  const int n = chain.n();
  if (initial_state < 1 || initial_state > n)
    throw InvalidState("simulate_chain: initial state " + std::to_string(initial_state) + " outside 1.." +
                       std::to_string(n));
  if (n_steps < 0) throw std::invalid_argument("simulate_chain: negative step count");
  Rng rng = make_rng(seed);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n_steps));
  int x = initial_state;
  for (std::int64_t s = 0; s < n_steps; ++s) {
    const double u = uniform01(rng);
    double cum = 0.0;
    int next = n;  // fallback absorbs rounding in the row sum
    for (int j = 1; j <= n; ++j) {
      cum += chain.prob(x, j);
      if (u < cum) {
        next = j;
        break;
      }
    }
    x = next;
    out.push_back(x);
  }
  return out;
}

std::vector<double> fundamental_solve(const MarkovChainSpec& chain, const StationaryDistribution& pi,
                                      const std::vector<double>& b) {
  const int n = chain.n();
  if (pi.pi.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("fundamental_solve: dimension mismatch");
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i) * n + j] = chain.prob(i + 1, j + 1) + pi.pi[j] - (i == j ? 1.0 : 0.0);
    }
  }
  std::vector<double> g = linalg::solve(m, b);
  double resid = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = -b[i];
    for (int j = 0; j < n; ++j) s += m[static_cast<std::size_t>(i) * n + j] * g[j];
    resid = std::max(resid, std::fabs(s));
  }
  if (resid > 1e-10) throw SolveFailure("fundamental_solve: residual above tolerance");
  return g;
}

}  // namespace hawkesim
