#pragma once

#include "frobenius/real.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace frobenius {

/// Laurent-type potential V(r) = d_m2/r^2 + d_m1/r + sum_i regular[i] r^i.
///
/// `step` is the index stride of the generalized series: 1 in general, 2 when
/// only even powers occur (then d_m1 and every odd regular coefficient must
/// vanish). `rho_V` is the convergence radius of the regular part.
struct PotentialSpec {
  Real d_m2 = 0;
  Real d_m1 = 0;
  std::vector<Real> regular;
  Real rho_V = infinity();
  int step = 1;

  /// Throws DomainError unless d_m2 > -1/8, rho_V > 0, coefficients are
  /// finite and the stride is compatible with the coefficients.
  void validate() const;

  bool confined_radius() const { return isfinite(rho_V); }
  Real regular_coefficient(int i) const;

  /// V(r) from the truncated Laurent form.
  Real operator()(const Real& r) const;
};

/// l(l+1)/(2r^2) + V(r).
Real effective_potential(const PotentialSpec& potential, const Real& l, const Real& r);

struct ChannelParams {
  Real l;
  Real delta1;
  Real delta2;
  Real disc;  // sqrt(8 d_m2 + (1+2l)^2) = delta2 - delta1
};

ChannelParams indicial_exponents(const PotentialSpec& potential, const Real& l);

enum class SeriesMode { numeric, lambda_poly };

namespace detail {
struct Recurrence;
}

/// Coefficients a_0..a_K of u(r, lambda) = r^delta2 sum_j a_j r^(step*j).
///
/// A numeric table holds the coefficients at one lambda; a lambda-poly table
/// holds each a_j as a dense polynomial in lambda (degree floor(step*j/2)).
/// Either kind can be evaluated at any lambda through coefficients_at().
/// Tables are immutable and cheap to copy.
class SeriesTable {
 public:
  SeriesMode mode() const { return mode_; }
  int order() const;
  int step() const;
  const ChannelParams& channel() const;
  const PotentialSpec& potential() const;

  /// Lambda the numeric coefficients were built for.
  const Real& lambda() const;
  const std::vector<Real>& values() const { return values_; }
  const std::vector<std::vector<Real>>& polynomials() const { return polys_; }

  std::vector<Real> coefficients_at(const Real& lambda) const;

  SeriesTable at(const Real& lambda) const;
  SeriesTable symbolic() const;
  SeriesTable with_order(int K) const;

 private:
  friend SeriesTable build_series(const PotentialSpec&, const ChannelParams&, int,
                                  const std::optional<Real>&);
  std::shared_ptr<const detail::Recurrence> rec_;
  SeriesMode mode_ = SeriesMode::numeric;
  std::optional<Real> lambda_;
  std::vector<Real> values_;
  std::vector<std::vector<Real>> polys_;
};

/// Builds the table from the recurrence; `lambda == nullopt` requests the
/// lambda-poly form.
SeriesTable build_series(const PotentialSpec& potential, const ChannelParams& channel, int K,
                         const std::optional<Real>& lambda);

/// Convenience: indicial exponents plus build_series.
SeriesTable build_series(const PotentialSpec& potential, const Real& l, int K,
                         const std::optional<Real>& lambda);

enum class Cancellation {
  strict,  // PrecisionError when cancellation exceeds the working precision
  report,  // never throw; callers consult sign_reliable()
};

inline constexpr int kGuardDigits = 10;

/// Truncated u(R, lambda) and its derivatives.
///
/// `du` is the radial derivative of u. `dreduced` is the derivative of the
/// reduced series u / r^delta2; its zeros define the lower bracket ends of the
/// published bracket tables.
struct BoundaryValues {
  Real u;
  Real du;
  Real dreduced;
  Real R;
  Real lambda;
  // Largest term magnitudes of the reduced series and of its derivative.
  Real term_scale;
  Real derivative_term_scale;
  // Reduced-series values the accumulated terms were summed into.
  Real reduced;

  bool u_reliable(int guard = kGuardDigits) const;
  bool dreduced_reliable(int guard = kGuardDigits) const;
};

BoundaryValues boundary_values(const SeriesTable& series, const Real& R, const Real& lambda,
                               Cancellation policy = Cancellation::strict,
                               int guard = kGuardDigits);

/// Strict sign changes of u(r, lambda) on the open interval (0, R). The grid is
/// doubled until two consecutive counts agree.
int node_count(const SeriesTable& series, const Real& lambda, const Real& R,
               int grid_points = 64);

/// Unnormalized u(r, lambda) at each grid point.
std::vector<Real> wavefunction(const SeriesTable& series, const Real& lambda,
                               std::span<const Real> r_grid);

}  // namespace frobenius
