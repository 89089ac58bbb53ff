#pragma once

#include <functional>
#include <vector>

namespace frobenius {

/// Dirichlet problem -u''/2 + V_eff u = E u on (0, r_max) on a uniform grid,
/// with V evaluated pointwise. Works in hardware doubles.
struct GridProblem {
  double r_max = 10;
  int points = 2000;
  double l = 0;
  std::function<double(double)> potential;
};

struct OracleOptions {
  // Largest allowed disagreement between the two Richardson estimates.
  double tolerance = 1e-6;
  int resolutions = 3;  // points, 2 points, 4 points, ...
};

/// Sturm count: eigenvalues of the discretized problem below `energy`.
int oracle_count_below(const GridProblem& problem, double energy);

/// Lowest eigenvalue with index n of the discretized problem at problem.points.
double oracle_eigenvalue_at(const GridProblem& problem, int n);

/// Lowest n_states eigenvalues, Richardson-extrapolated (h^2 error) across
/// successive grid doublings. Throws GridError when consecutive extrapolated
/// values disagree by more than options.tolerance.
std::vector<double> oracle_eigenvalues(const GridProblem& problem, int n_states,
                                       const OracleOptions& options = {});

}  // namespace frobenius
