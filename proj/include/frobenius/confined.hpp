#pragma once

#include "frobenius/roots.hpp"

#include <functional>
#include <vector>

namespace frobenius {

struct ConfinedState {
  int n = 0;  // node count of u(r, lambda) on (0, R)
  Real l;
  Real lambda;
};

struct ConfinedResult {
  std::vector<ConfinedState> states;  // ascending in n
  Real R;
  int K_used = 0;
  unsigned digits = 0;
};

struct ConfinedOptions {
  int K_start = 40;
  int K_max = 400;
  double K_growth = 1.5;
  int initial_grid = 64;
  ScanOptions scan;
};

int next_order(int K, double growth);

/// Lowest `n_states` roots of u(R, .) at one truncation order, labeled by node
/// count. Throws InterleaveError when the labels are not 0..n_states-1.
std::vector<ConfinedState> confined_roots_at(const SeriesTable& series, const Real& R,
                                             int n_states, const ConfinedOptions& options = {});

/// Wall-confined spectrum: raises K by K_growth until every root agrees with
/// the previous order to within `tol`.
ConfinedResult solve_confined(const PotentialSpec& potential, const Real& l, const Real& R,
                              int n_states, const Real& tol, const ConfinedOptions& options = {});

/// Repeats solve_confined while the potential family's truncation P grows by
/// two, until the roots move by less than tol/10.
ConfinedResult solve_confined_adaptive(const std::function<PotentialSpec(int)>& family,
                                       int P_start, const Real& l, const Real& R, int n_states,
                                       const Real& tol, const ConfinedOptions& options = {});

struct SweepRow {
  Real R;
  int n = 0;
  Real l;
  Real lambda;
  Real above_ground;  // lambda_nl(R) - lambda_00(R)
  int K_used = 0;
};

/// lambda_nl(R) for every R in the list and every l, ordered by (R, l, n).
std::vector<SweepRow> r_sweep(const PotentialSpec& potential, const std::vector<Real>& ls,
                              int n_states, const std::vector<Real>& R_list, const Real& tol,
                              const ConfinedOptions& options = {}, int jobs = 1);

}  // namespace frobenius
