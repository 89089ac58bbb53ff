#include "frobenius/oracle.hpp"

#include "frobenius/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace frobenius {

namespace {

void check(const GridProblem& p) {
  if (!p.potential) throw GridError("grid problem has no potential");
  if (!(p.r_max > 0) || p.points < 16) throw GridError("grid needs r_max > 0 and >= 16 points");
}

double v_eff(const GridProblem& p, double r) {
  return p.l * (p.l + 1) / (2 * r * r) + p.potential(r);
}

}  // namespace

int oracle_count_below(const GridProblem& problem, double energy) {
  check(problem);
  const int n = problem.points;
  const double h = problem.r_max / n;
  // Shooting solution of the three-point scheme; its sign changes form the
  // Sturm sequence of the tridiagonal matrix.
  double previous = 0;
  double current = 1;
  int changes = 0;
  for (int j = 1; j < n; ++j) {
    const double r = j * h;
    const double next = 2 * current - previous + 2 * h * h * (v_eff(problem, r) - energy) * current;
    if (next == 0) {
      previous = current;
      current = -std::numeric_limits<double>::min() * (current > 0 ? 1 : -1);
      ++changes;
      continue;
    }
    if ((next > 0) != (current > 0)) ++changes;
    previous = current;
    current = next;
    if (std::abs(current) > 1e200) {
      previous *= 1e-200;
      current *= 1e-200;
    }
  }
  return changes;
}

double oracle_eigenvalue_at(const GridProblem& problem, int n) {
  check(problem);
  const double h = problem.r_max / problem.points;
  double lo = std::numeric_limits<double>::infinity();
  for (int j = 1; j < problem.points; ++j) lo = std::min(lo, v_eff(problem, j * h));
  lo -= 1;
  while (oracle_count_below(problem, lo) > n) lo -= std::max(1.0, std::abs(lo));
  double hi = std::max(lo + 1, v_eff(problem, problem.r_max));
  for (int guard = 0; oracle_count_below(problem, hi) <= n; ++guard) {
    if (guard > 200) throw GridError("state index " + std::to_string(n) + " not reached");
    hi += hi - lo;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (oracle_count_below(problem, mid) > n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> oracle_eigenvalues(const GridProblem& problem, int n_states,
                                       const OracleOptions& options) {
  check(problem);
  if (options.resolutions < 3) throw GridError("oracle needs at least three resolutions");
  std::vector<double> out;
  for (int n = 0; n < n_states; ++n) {
    std::vector<double> raw;
    GridProblem p = problem;
    for (int level = 0; level < options.resolutions; ++level) {
      raw.push_back(oracle_eigenvalue_at(p, n));
      p.points *= 2;
    }
    std::vector<double> extrapolated;
    for (std::size_t i = 1; i < raw.size(); ++i) {
      extrapolated.push_back((4 * raw[i] - raw[i - 1]) / 3);
    }
    const double shift = std::abs(extrapolated.back() - extrapolated[extrapolated.size() - 2]);
    if (shift > options.tolerance) {
      throw GridError("oracle eigenvalue " + std::to_string(n) + " shifts by " +
                      std::to_string(shift) + " between resolutions");
    }
    out.push_back(extrapolated.back());
  }
  return out;
}

}  // namespace frobenius
