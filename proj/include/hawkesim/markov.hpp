#pragma once

#include <cstdint>
#include <vector>

namespace hawkesim {

// Finite Markov chain with a real-valued mark a(x) attached to each state.
// State labels are 1..n; a label is just an index into the mark vector.
class MarkovChainSpec {
 public:
  // transition: row-stochastic n x n matrix (row i = outgoing law of state i),
  // marks: n mark values. Validates shape, nonnegativity and row sums (1e-12).
  MarkovChainSpec(std::vector<std::vector<double>> transition, std::vector<double> marks);

  int n() const { return n_; }
  // P(i -> j) with 1-based labels.
  double prob(int from, int to) const { return p_[(from - 1) * static_cast<std::size_t>(n_) + (to - 1)]; }
  // Mark of a 1-based state label.
  double mark(int state) const { return a_[state - 1]; }
  const std::vector<double>& marks() const { return a_; }
  // Row-major flat copy of P, used by the solvers.
  const std::vector<double>& flat() const { return p_; }

 private:
  int n_;
  std::vector<double> p_;
  std::vector<double> a_;
};

// Stationary law pi* of an ergodic chain: pi* P = pi*, sum = 1, entries >= 0.
struct StationaryDistribution {
  std::vector<double> pi;
  double operator[](int state) const { return pi[state - 1]; }  // 1-based
};

// True iff the chain is irreducible and aperiodic. Irreducibility is checked
// by forward/backward reachability on the support graph; the period is the
// gcd of d(u)+1-d(v) over support edges for BFS depths d.
bool is_ergodic(const MarkovChainSpec& chain);

// Solves the augmented balance system (P^T - I with a normalization row).
// Throws NonErgodicChain for non-ergodic input and SolveFailure if the
// residual ||pi P - pi||_inf ends up above 1e-10.
StationaryDistribution stationary_distribution(const MarkovChainSpec& chain);

// n_steps transitions starting from a 1-based initial state; returns the
// visited labels (the initial state itself is not included).
std::vector<int> simulate_chain(const MarkovChainSpec& chain, std::int64_t n_steps, int initial_state,
                                std::uint64_t seed);

// Solves (P + Pi* - I) g = b where Pi* has every row equal to pi*.
// Throws SolveFailure if the solve fails or the residual exceeds 1e-10.
std::vector<double> fundamental_solve(const MarkovChainSpec& chain, const StationaryDistribution& pi,
                                      const std::vector<double>& b);

}  // namespace hawkesim
