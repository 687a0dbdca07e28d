#pragma once

#include <cstddef>
#include <vector>

namespace hawkesim::linalg {

// Solves A x = b for a dense row-major n x n matrix by Gaussian elimination
// with partial pivoting. The systems in this library are tiny (chain order),
// so no external solver is pulled in. Throws SolveFailure on a vanishing pivot.
std::vector<double> solve(std::vector<double> a, std::vector<double> b);

}  // namespace hawkesim::linalg
