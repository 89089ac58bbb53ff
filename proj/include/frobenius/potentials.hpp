#pragma once

#include "frobenius/series.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <string>

namespace frobenius {

using Rational = boost::multiprecision::cpp_rational;

/// Rescaled anharmonic oscillator V(r) = z r^2 + r^(2J).
struct AnharmonicSpec {
  int J = 2;
  Real z = 0;
};

/// Raw form V(r) = omega^2/2 r^2 + g r^(2J), g > 0.
struct RawAnharmonic {
  int J = 2;
  Real omega = 1;
  Real g = 1;

  AnharmonicSpec rescaled() const;   // z = omega^2/2 * g^(-4/(2J+2))
  Real energy_scale() const;         // lambda = lambda_hat * g^(2/(2J+2))
  Real length_scale() const;         // r = r_hat * g^(-1/(2J+2))
};

/// Hulthen potential -delta e^{-delta r} / (1 - e^{-delta r}), regular part
/// kept through r^(2P+1).
struct HulthenSpec {
  Real delta;
  int P = 8;
};

struct KratzerSpec {
  Real d_m2;
  Real d_m1;
};

PotentialSpec harmonic_spec(const Real& omega);
PotentialSpec anharmonic_spec(const AnharmonicSpec& spec);
PotentialSpec raw_anharmonic_spec(const RawAnharmonic& spec);
PotentialSpec kratzer_spec(const KratzerSpec& spec);
PotentialSpec hulthen_spec(const HulthenSpec& spec);

/// Exact beta_n from the alternating double sum (equals |B_2n|).
Rational hulthen_beta(int n);
/// g_n = (-1)^n beta_{n+1} / (2(n+1))!.
Rational hulthen_g(int n);
Real to_real(const Rational& q);

/// Closed-form Hulthen potential.
Real hulthen_potential(const Real& delta, const Real& r);
/// Analytic s-wave energies -(1 - (n+1)^2 delta/2)^2 / (2 (n+1)^2).
Real hulthen_exact_energy(const Real& delta, int n);

Real kratzer_exact_energy(const KratzerSpec& spec, int n, const Real& l);

enum class AsymptoticBranch { large_positive_z, large_negative_z };

/// Harmonic limit (2n+l+3/2) sqrt(2z) for z -> +inf; for z -> -inf (quartic
/// only) the displaced oscillator -z^2/4 + (n+1/2) sqrt(-4z).
Real asymptotic_energy(const AnharmonicSpec& spec, int n, const Real& l,
                       AsymptoticBranch branch);

/// Angular momentum shift l + (D-3)/2 for D-dimensional problems.
Real effective_l(int D, int l);

/// Catalog lookup used by the command line. Names: harmonic(omega),
/// anharmonic(J, z | omega, g), kratzer(d-2, d-1), hulthen(delta, P),
/// laurent(d-2, d-1, d0, d1, ...).
PotentialSpec catalog_potential(const std::string& name,
                                const std::map<std::string, std::string>& params);

/// Pointwise V(r) in hardware doubles, evaluated directly (no series).
std::function<double(double)> direct_potential(const std::string& name,
                                               const std::map<std::string, std::string>& params);

}  // namespace frobenius
