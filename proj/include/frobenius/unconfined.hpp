#pragma once

#include "frobenius/potentials.hpp"
#include "frobenius/roots.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace frobenius {

/// Two-sided bracket (lower, upper) = (lambda'_kl(R), lambda_kl(R)).
struct BracketResult {
  int k = 0;
  Real l;
  Real lower;
  Real upper;
  Real R;
  Real width;
  int K = 0;
  // upper < V_eff(R, l): R lies beyond the turning point, the bracket encloses E_kl.
  bool certified = false;
  bool converged = false;

  Real energy() const { return (lower + upper) / 2; }
  Real uncertainty() const { return width / 2; }
};

struct RSchedule {
  Real R0 = 1;
  Real dR = Real(1) / 2;
  int max_steps = 400;
  Real tol = Real("1e-10");
};

struct UnconfinedOptions {
  int K_start = 40;
  int K_max = 400;
  double K_growth = 1.5;
  int initial_grid = 64;
  // Largest usable R as a fraction of a finite rho_V.
  double radius_guard = 0.9;
  ScanOptions scan;
};

/// First n_states brackets at radius R and truncation K, verified to
/// interleave and labeled by node count.
std::vector<BracketResult> brackets_at_R(const PotentialSpec& potential, const Real& l,
                                         const Real& R, int n_states, int K,
                                         const ScanOptions& scan = {}, int initial_grid = 64);

struct Certification {
  BracketResult result;
  std::vector<BracketResult> trace;  // accepted bracket per R-step
};

/// Iterates R over the schedule until the bracket of state k is narrower than
/// schedule.tol. K is raised when a step fails to shrink the bracket, when the
/// roots stop interleaving, and when the final bracket moves under a larger K.
Certification certify_state(const PotentialSpec& potential, const Real& l, int k,
                            const RSchedule& schedule, const UnconfinedOptions& options = {});

std::vector<BracketResult> solve_unconfined(const PotentialSpec& potential, const Real& l,
                                            const std::vector<int>& states,
                                            const RSchedule& schedule,
                                            const UnconfinedOptions& options = {}, int jobs = 1);

/// R0 at the minimum of V_eff (at least 1), dR = 1/2.
RSchedule default_schedule(const PotentialSpec& potential, const Real& l, const Real& tol);

struct StateLabel {
  int n = 0;
  int l = 0;
  auto operator<=>(const StateLabel&) const = default;
};

/// Certified energy of state (n, l) of the rescaled anharmonic oscillator.
BracketResult anharmonic_energy(const AnharmonicSpec& spec, StateLabel state, const Real& tol,
                                const UnconfinedOptions& options = {});

struct CrossingResult {
  Real z;
  Real width;  // final z bracket width
  Real energy;
  int evaluations = 0;
};

/// z where E_a(z) - E_b(z) changes sign inside z_window.
CrossingResult find_level_crossing(int J, StateLabel a, StateLabel b,
                                   const std::pair<Real, Real>& z_window, const Real& tol,
                                   const UnconfinedOptions& options = {});

struct ZSweepPoint {
  Real z;
  std::vector<BracketResult> energies;        // one per requested state
  std::vector<Real> excitation;               // E_nl - E_00
  std::vector<std::optional<Real>> asymptote; // large-|z| estimate, where defined
  Real ground;
  bool converged = true;
};

std::vector<ZSweepPoint> z_sweep(int J, const std::vector<StateLabel>& states,
                                 const std::vector<Real>& z_list, const Real& tol,
                                 const UnconfinedOptions& options = {}, int jobs = 1);

/// States ordered by (2n + l, n): (0,0), (0,1), (0,2), (1,0), (0,3), (1,1), ...
std::vector<StateLabel> lowest_labels(int count);

}  // namespace frobenius
