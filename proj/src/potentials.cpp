#include "frobenius/potentials.hpp"

#include "frobenius/errors.hpp"

#include <cmath>

namespace frobenius {

namespace mp = boost::multiprecision;

namespace {

Real pi() { return 4 * atan(Real(1)); }

mp::cpp_int binomial(int n, int k) {
  mp::cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

mp::cpp_int factorial(int n) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

AnharmonicSpec RawAnharmonic::rescaled() const {
  if (!(g > 0)) throw DomainError("anharmonic coupling g must be positive");
  return {J, omega * omega / 2 * pow(g, Real(-4) / (2 * J + 2))};
}

Real RawAnharmonic::energy_scale() const { return pow(g, Real(2) / (2 * J + 2)); }

Real RawAnharmonic::length_scale() const { return pow(g, Real(-1) / (2 * J + 2)); }

PotentialSpec harmonic_spec(const Real& omega) {
  if (!(omega > 0)) throw DomainError("harmonic frequency must be positive");
  PotentialSpec p;
  p.regular = {Real(0), Real(0), omega * omega / 2};
  return p;
}

PotentialSpec anharmonic_spec(const AnharmonicSpec& spec) {
  if (spec.J < 2) throw DomainError("anharmonic power J must be at least 2");
  PotentialSpec p;
  p.regular.assign(2 * spec.J + 1, Real(0));
  p.regular[2] = spec.z;
  p.regular[2 * spec.J] = 1;
  p.step = 2;
  return p;
}

PotentialSpec raw_anharmonic_spec(const RawAnharmonic& spec) {
  if (spec.J < 2) throw DomainError("anharmonic power J must be at least 2");
  if (!(spec.g > 0)) throw DomainError("anharmonic coupling g must be positive");
  PotentialSpec p;
  p.regular.assign(2 * spec.J + 1, Real(0));
  p.regular[2] = spec.omega * spec.omega / 2;
  p.regular[2 * spec.J] = spec.g;
  p.step = 2;
  return p;
}

PotentialSpec kratzer_spec(const KratzerSpec& spec) {
  PotentialSpec p;
  p.d_m2 = spec.d_m2;
  p.d_m1 = spec.d_m1;
  p.validate();
  return p;
}

Rational hulthen_beta(int n) {
  if (n < 1) throw DomainError("beta_n needs n >= 1");
  Rational outer = 0;
  for (int k = 1; k <= 2 * n - 1; ++k) {
    mp::cpp_int inner = 0;
    for (int j = 1; j <= k; ++j) {
      mp::cpp_int term = binomial(k, j) * mp::pow(mp::cpp_int(j), 2 * n - 1);
      inner += (j % 2 == 0) ? term : mp::cpp_int(-term);
    }
    outer += Rational(inner, mp::pow(mp::cpp_int(2), k));
  }
  Rational prefactor(mp::cpp_int(n), mp::pow(mp::cpp_int(2), 2 * n) - 1);
  Rational beta = prefactor * outer;
  return n % 2 == 0 ? beta : Rational(-beta);
}

Rational hulthen_g(int n) {
  if (n < 0) throw DomainError("g_n needs n >= 0");
  Rational g = hulthen_beta(n + 1) / Rational(factorial(2 * (n + 1)));
  return n % 2 == 0 ? g : Rational(-g);
}

Real to_real(const Rational& q) {
  return Real(mp::numerator(q).str()) / Real(mp::denominator(q).str());
}

PotentialSpec hulthen_spec(const HulthenSpec& spec) {
  if (!(spec.delta > 0)) throw DomainError("Hulthen screening delta must be positive");
  if (spec.P < 0) throw DomainError("Hulthen truncation P must be non-negative");
  PotentialSpec p;
  p.d_m1 = -1;
  p.regular.assign(2 * spec.P + 2, Real(0));
  p.regular[0] = spec.delta / 2;
  Real delta_power = spec.delta * spec.delta;  // delta^(2n+2)
  for (int n = 0; n <= spec.P; ++n) {
    p.regular[2 * n + 1] = -delta_power * to_real(hulthen_g(n));
    delta_power *= spec.delta * spec.delta;
  }
  p.rho_V = 2 * pi() / spec.delta;
  return p;
}

Real hulthen_potential(const Real& delta, const Real& r) {
  const Real e = exp(-delta * r);
  return -delta * e / (1 - e);
}

Real hulthen_exact_energy(const Real& delta, int n) {
  const Real m2 = Real(n + 1) * (n + 1);
  const Real f = 1 - m2 * delta / 2;
  return -f * f / (2 * m2);
}

Real kratzer_exact_energy(const KratzerSpec& spec, int n, const Real& l) {
  if (!(spec.d_m2 > Real(-1) / 8)) throw DomainError("Kratzer needs d_m2 > -1/8");
  if (n < 0) throw DomainError("radial quantum number must be non-negative");
  const Real root = sqrt((2 * l + 1) * (2 * l + 1) + 8 * spec.d_m2);
  const Real denom = 2 * n + 1 + root;
  return -2 * spec.d_m1 * spec.d_m1 / (denom * denom);
}

Real asymptotic_energy(const AnharmonicSpec& spec, int n, const Real& l,
                       AsymptoticBranch branch) {
  if (branch == AsymptoticBranch::large_positive_z) {
    if (!(spec.z > 0)) throw DomainError("z -> +inf estimate needs z > 0");
    return (2 * n + l + Real(3) / 2) * sqrt(2 * spec.z);
  }
  if (!(spec.z < 0)) throw DomainError("z -> -inf estimate needs z < 0");
  if (spec.J != 2) throw DomainError("z -> -inf estimate is quartic-specific (J = 2)");
  return -spec.z * spec.z / 4 + (n + Real(1) / 2) * sqrt(-4 * spec.z);
}

Real effective_l(int D, int l) {
  if (D < 2) throw DomainError("dimension must be at least 2");
  if (l < 0) throw DomainError("angular momentum must be non-negative");
  return Real(l) + Real(D - 3) / 2;
}

namespace {

using Params = std::map<std::string, std::string>;

Real param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("potential parameter '" + key + "' is required");
  return parse_real(it->second);
}

std::optional<Real> optional_param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return parse_real(it->second);
}

int int_param(const Params& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ConfigError("potential parameter '" + key + "' must be an integer");
  }
}

AnharmonicSpec anharmonic_from(const Params& params) {
  const int J = int_param(params, "J", 2);
  if (auto z = optional_param(params, "z")) return {J, *z};
  RawAnharmonic raw{J, param(params, "omega"), param(params, "g")};
  return raw.rescaled();
}

}  // namespace

PotentialSpec catalog_potential(const std::string& name, const Params& params) {
  if (name == "harmonic") {
    auto omega = optional_param(params, "omega");
    return harmonic_spec(omega ? *omega : Real(1));
  }
  if (name == "anharmonic") return anharmonic_spec(anharmonic_from(params));
  if (name == "kratzer") return kratzer_spec({param(params, "d-2"), param(params, "d-1")});
  if (name == "hulthen") {
    return hulthen_spec({param(params, "delta"), int_param(params, "P", 8)});
  }
  if (name == "laurent") {
    PotentialSpec p;
    if (auto v = optional_param(params, "d-2")) p.d_m2 = *v;
    if (auto v = optional_param(params, "d-1")) p.d_m1 = *v;
    for (int i = 0;; ++i) {
      auto v = optional_param(params, "d" + std::to_string(i));
      if (!v) {
        bool more = false;
        for (int k = i + 1; k < i + 16; ++k) more = more || params.count("d" + std::to_string(k));
        if (!more) break;
        p.regular.emplace_back(0);
        continue;
      }
      p.regular.push_back(*v);
    }
    if (auto v = optional_param(params, "rho")) p.rho_V = *v;
    p.step = int_param(params, "step", 1);
    p.validate();
    return p;
  }
  throw ConfigError("unknown potential '" + name + "'");
}

std::function<double(double)> direct_potential(const std::string& name, const Params& params) {
  if (name == "harmonic") {
    auto omega = optional_param(params, "omega");
    const double w = omega ? to_double(*omega) : 1.0;
    return [w](double r) { return 0.5 * w * w * r * r; };
  }
  if (name == "anharmonic") {
    const AnharmonicSpec a = anharmonic_from(params);
    const double z = to_double(a.z);
    const int J = a.J;
    return [z, J](double r) { return z * r * r + std::pow(r, 2 * J); };
  }
  if (name == "kratzer") {
    const double dm2 = to_double(param(params, "d-2"));
    const double dm1 = to_double(param(params, "d-1"));
    return [dm2, dm1](double r) { return dm2 / (r * r) + dm1 / r; };
  }
  if (name == "hulthen") {
    const double delta = to_double(param(params, "delta"));
    return [delta](double r) {
      const double e = std::exp(-delta * r);
      return -delta * e / (-std::expm1(-delta * r));
    };
  }
  if (name == "laurent") {
    PotentialSpec p = catalog_potential(name, params);
    std::vector<double> d;
    for (const auto& c : p.regular) d.push_back(to_double(c));
    const double dm2 = to_double(p.d_m2);
    const double dm1 = to_double(p.d_m1);
    return [d, dm2, dm1](double r) {
      double v = dm2 / (r * r) + dm1 / r;
      double power = 1;
      for (double c : d) {
        v += c * power;
        power *= r;
      }
      return v;
    };
  }
  throw ConfigError("unknown potential '" + name + "'");
}

}  // namespace frobenius
