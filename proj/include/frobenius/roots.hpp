#pragma once

#include "frobenius/series.hpp"

#include <optional>
#include <vector>

namespace frobenius {

enum class RootKind {
  u,   // u(R, lambda) = 0
  du,  // derivative boundary condition at R
};

/// Which derivative defines the `du` kind. `reduced` differentiates the
/// series u / r^delta2 (the convention of the published bracket tables),
/// `radial` differentiates u itself.
enum class DerivativeCondition { reduced, radial };

struct Window {
  Real lo;
  Real hi;
};

struct ScanOptions {
  DerivativeCondition derivative = DerivativeCondition::reduced;
  int max_doublings = 8;
  int guard = kGuardDigits;
  // Which kinds scan_interleaved bisects; the other kind is located to a cell.
  bool refine_u = true;
  bool refine_du = true;
  // Off: return every sign change once the counts settle, interleaved or not.
  bool require_interleave = true;
};

struct RootSet {
  std::vector<Real> roots;  // strictly ascending
  RootKind kind = RootKind::u;
  Window window;
  Real R;
  int K = 0;
  unsigned digits = 0;
  int grid_used = 0;
};

struct InterleavedRoots {
  RootSet u;
  RootSet du;
};

/// Sign of the requested boundary function at (R, lambda).
Real boundary_function(const BoundaryValues& bv, RootKind kind, DerivativeCondition derivative);

/// True when the merged ascending sequence strictly alternates between kinds.
bool interleaved(const std::vector<Real>& u_roots, const std::vector<Real>& du_roots);

/// All sign-change roots of both kinds in the window. The grid starts at
/// `initial_grid` cells and doubles until the merged pattern alternates and
/// the root counts agree across one doubling; each root is then refined down
/// to 10^-(digits - guard) relative width.
InterleavedRoots scan_interleaved(const SeriesTable& series, const Real& R, const Window& window,
                                  int initial_grid = 64, const ScanOptions& options = {});

RootSet scan_roots(const SeriesTable& series, const Real& R, const Window& window, RootKind kind,
                   int initial_grid = 64, const ScanOptions& options = {});

/// Window starting below the lowest root of either kind and extending until
/// node_count reports at least `count` roots of u(R, .) below its top.
Window spectral_window(const SeriesTable& series, const Real& R, int count,
                       const ScanOptions& options = {});

struct RootDelta {
  Real root;                   // at truncation K
  std::optional<Real> partner; // nearest root at K2 within tol
  Real delta;                  // |root - partner|, or distance to nearest K2 root
  bool spurious = false;
};

/// Matches the roots found at truncation K against those at K2 > K. Scans here
/// skip the interleaving requirement, since a broken pattern is what low K
/// looks like.
std::vector<RootDelta> root_stability(const PotentialSpec& potential, const Real& l,
                                      const Real& R, const Window& window, RootKind kind, int K,
                                      int K2, const Real& tol, const ScanOptions& options = {});

}  // namespace frobenius
