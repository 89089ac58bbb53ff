#include "frobenius/series.hpp"

#include "frobenius/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frobenius {

namespace detail {

// Precompiled recurrence a_j * den_j = -2 lambda a_{j - lambda_shift}
//                                      + sum_c coupling_c a_{j - shift_c}.
struct Recurrence {
  PotentialSpec potential;
  ChannelParams channel;
  int order = 0;
  int step = 1;
  int lambda_shift = 2;
  std::vector<std::pair<int, Real>> couplings;  // (shift, 2*d)
  std::vector<Real> denominators;               // index j, den_0 unused
};

namespace {

std::shared_ptr<const Recurrence> compile(const PotentialSpec& potential,
                                          const ChannelParams& channel, int K) {
  if (K < 2) throw DomainError("truncation order K must be at least 2");
  auto rec = std::make_shared<Recurrence>();
  rec->potential = potential;
  rec->channel = channel;
  rec->order = K;
  rec->step = potential.step;
  rec->lambda_shift = 2 / potential.step;

  // Generic index i = step*j couples to a_n through d_{i-2-n}; with n =
  // step*(j-m) that is d_{step*m - 2}. d_{-2} is absorbed into the denominator.
  const int s = potential.step;
  const int max_index = static_cast<int>(potential.regular.size()) - 1;
  for (int m = 1; s * m - 2 <= max_index; ++m) {
    const int d_index = s * m - 2;
    Real d = d_index == -1 ? potential.d_m1 : potential.regular_coefficient(d_index);
    if (d != 0) rec->couplings.emplace_back(m, 2 * d);
  }

  rec->denominators.resize(K + 1);
  for (int j = 1; j <= K; ++j) {
    const int i = s * j;
    Real den = Real(i) * (Real(i) + channel.disc);
    if (den == 0) {
      throw DomainError("recurrence denominator vanishes at i=" + std::to_string(i));
    }
    rec->denominators[j] = den;
  }
  return rec;
}

std::vector<Real> numeric_coefficients(const Recurrence& rec, const Real& lambda) {
  std::vector<Real> a(rec.order + 1);
  a[0] = 1;
  const Real two_lambda = 2 * lambda;
  Real num;
  for (int j = 1; j <= rec.order; ++j) {
    num = 0;
    if (j >= rec.lambda_shift) num -= two_lambda * a[j - rec.lambda_shift];
    for (const auto& [shift, coupling] : rec.couplings) {
      if (j < shift) break;
      num += coupling * a[j - shift];
    }
    a[j] = num / rec.denominators[j];
  }
  return a;
}

std::vector<std::vector<Real>> polynomial_coefficients(const Recurrence& rec) {
  std::vector<std::vector<Real>> a(rec.order + 1);
  a[0] = {Real(1)};
  for (int j = 1; j <= rec.order; ++j) {
    std::vector<Real> num;
    auto accumulate = [&num](const std::vector<Real>& p, const Real& scale, int degree_shift) {
      if (num.size() < p.size() + degree_shift) num.resize(p.size() + degree_shift, Real(0));
      for (std::size_t k = 0; k < p.size(); ++k) num[k + degree_shift] += scale * p[k];
    };
    if (j >= rec.lambda_shift) accumulate(a[j - rec.lambda_shift], Real(-2), 1);
    for (const auto& [shift, coupling] : rec.couplings) {
      if (j < shift) break;
      accumulate(a[j - shift], coupling, 0);
    }
    for (auto& c : num) c /= rec.denominators[j];
    if (num.empty()) num.push_back(Real(0));
    a[j] = std::move(num);
  }
  return a;
}

Real horner(const std::vector<Real>& p, const Real& x) {
  Real acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void require_inside_radius(const PotentialSpec& potential, const Real& r) {
  if (potential.confined_radius() && r >= potential.rho_V) {
    throw ConvergenceError("r = " + format_full(r) +
                           " lies outside the convergence radius of the potential");
  }
}

// Reduced series S(r) = sum_j a_j r^(step j) by Horner in x = r^step.
Real reduced_series(const std::vector<Real>& a, const Real& r, int step) {
  const Real x = step == 1 ? r : r * r;
  return horner(a, x);
}

}  // namespace
}  // namespace detail

void PotentialSpec::validate() const {
  if (!(d_m2 > Real(-1) / 8)) {
    throw DomainError("d_m2 must exceed -1/8 for a normalizable regular solution");
  }
  if (!(rho_V > 0)) throw DomainError("convergence radius rho_V must be positive");
  if (!isfinite(d_m2) || !isfinite(d_m1)) throw DomainError("singular coefficients must be finite");
  for (const auto& d : regular) {
    if (!isfinite(d)) throw DomainError("regular coefficients must be finite");
  }
  if (step != 1 && step != 2) throw DomainError("series stride must be 1 or 2");
  if (step == 2) {
    if (d_m1 != 0) throw DomainError("stride 2 requires d_m1 = 0");
    for (std::size_t i = 1; i < regular.size(); i += 2) {
      if (regular[i] != 0) throw DomainError("stride 2 requires even powers only");
    }
  }
}

Real PotentialSpec::regular_coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(regular.size())) return Real(0);
  return regular[i];
}

Real PotentialSpec::operator()(const Real& r) const {
  Real v = d_m2 / (r * r) + d_m1 / r;
  Real power = 1;
  for (const auto& d : regular) {
    v += d * power;
    power *= r;
  }
  return v;
}

Real effective_potential(const PotentialSpec& potential, const Real& l, const Real& r) {
  return l * (l + 1) / (2 * r * r) + potential(r);
}

ChannelParams indicial_exponents(const PotentialSpec& potential, const Real& l) {
  if (!(potential.d_m2 > Real(-1) / 8)) {
    throw DomainError("no acceptable regular solution: d_m2 <= -1/8");
  }
  const Real radicand = 8 * potential.d_m2 + (1 + 2 * l) * (1 + 2 * l);
  if (!(radicand > 0)) {
    throw DomainError("8 d_m2 + (1+2l)^2 must be positive");
  }
  ChannelParams c;
  c.l = l;
  c.disc = sqrt(radicand);
  c.delta1 = (1 - c.disc) / 2;
  c.delta2 = (1 + c.disc) / 2;
  return c;
}

int SeriesTable::order() const { return rec_->order; }
int SeriesTable::step() const { return rec_->step; }
const ChannelParams& SeriesTable::channel() const { return rec_->channel; }
const PotentialSpec& SeriesTable::potential() const { return rec_->potential; }

const Real& SeriesTable::lambda() const {
  if (!lambda_) throw std::logic_error("lambda-poly table has no fixed lambda");
  return *lambda_;
}

std::vector<Real> SeriesTable::coefficients_at(const Real& lambda) const {
  if (mode_ == SeriesMode::numeric) {
    if (lambda_ && *lambda_ == lambda) return values_;
    return detail::numeric_coefficients(*rec_, lambda);
  }
  std::vector<Real> a;
  a.reserve(polys_.size());
  for (const auto& p : polys_) a.push_back(detail::horner(p, lambda));
  return a;
}

SeriesTable SeriesTable::at(const Real& lambda) const {
  SeriesTable t;
  t.rec_ = rec_;
  t.mode_ = SeriesMode::numeric;
  t.lambda_ = lambda;
  t.values_ = coefficients_at(lambda);
  return t;
}

SeriesTable SeriesTable::symbolic() const {
  SeriesTable t;
  t.rec_ = rec_;
  t.mode_ = SeriesMode::lambda_poly;
  t.polys_ = detail::polynomial_coefficients(*rec_);
  return t;
}

SeriesTable SeriesTable::with_order(int K) const {
  return build_series(rec_->potential, rec_->channel, K,
                      mode_ == SeriesMode::numeric ? lambda_ : std::nullopt);
}

SeriesTable build_series(const PotentialSpec& potential, const ChannelParams& channel, int K,
                         const std::optional<Real>& lambda) {
  potential.validate();
  SeriesTable t;
  t.rec_ = detail::compile(potential, channel, K);
  if (lambda) {
    t.mode_ = SeriesMode::numeric;
    t.lambda_ = *lambda;
    t.values_ = detail::numeric_coefficients(*t.rec_, *lambda);
  } else {
    t.mode_ = SeriesMode::lambda_poly;
    t.polys_ = detail::polynomial_coefficients(*t.rec_);
  }
  return t;
}

SeriesTable build_series(const PotentialSpec& potential, const Real& l, int K,
                         const std::optional<Real>& lambda) {
  return build_series(potential, indicial_exponents(potential, l), K, lambda);
}

namespace {
bool reliable(const Real& value, const Real& scale, int guard) {
  if (value == 0) return scale == 0;
  const int digits = static_cast<int>(working_digits()) - guard;
  return scale <= abs(value) * pow(Real(10), digits);
}
}  // namespace

bool BoundaryValues::u_reliable(int guard) const { return reliable(reduced, term_scale, guard); }

bool BoundaryValues::dreduced_reliable(int guard) const {
  return reliable(dreduced, derivative_term_scale, guard);
}

BoundaryValues boundary_values(const SeriesTable& series, const Real& R, const Real& lambda,
                               Cancellation policy, int guard) {
  if (!(R > 0)) throw DomainError("boundary radius must be positive");
  detail::require_inside_radius(series.potential(), R);

  const std::vector<Real> a = series.coefficients_at(lambda);
  const int s = series.step();
  const Real x = s == 1 ? R : R * R;

  BoundaryValues bv;
  bv.R = R;
  bv.lambda = lambda;
  Real sum = 0;
  Real dsum = 0;
  Real scale = 0;
  Real dscale = 0;
  Real power = 1;  // x^j
  Real term;
  Real dterm;
  for (std::size_t j = 0; j < a.size(); ++j) {
    term = a[j] * power;
    sum += term;
    if (j > 0) {
      dterm = Real(s * static_cast<int>(j)) * term / R;
      dsum += dterm;
      if (abs(dterm) > dscale) dscale = abs(dterm);
    }
    if (abs(term) > scale) scale = abs(term);
    power *= x;
  }
  const Real& delta = series.channel().delta2;
  const Real prefactor = pow(R, delta);
  bv.reduced = sum;
  bv.u = prefactor * sum;
  bv.dreduced = dsum;
  bv.du = prefactor / R * (delta * sum + R * dsum);
  bv.term_scale = scale;
  bv.derivative_term_scale = dscale;

  if (policy == Cancellation::strict) {
    if ((sum != 0 && !bv.u_reliable(guard)) || (dsum != 0 && !bv.dreduced_reliable(guard))) {
      throw PrecisionError("series cancellation at R = " + format_full(R) +
                           " exceeds the working precision of " +
                           std::to_string(working_digits()) + " digits");
    }
  }
  return bv;
}

int node_count(const SeriesTable& series, const Real& lambda, const Real& R, int grid_points) {
  if (!(R > 0)) throw DomainError("node_count needs R > 0");
  if (grid_points < 4) grid_points = 4;
  detail::require_inside_radius(series.potential(), R);
  const std::vector<Real> a = series.coefficients_at(lambda);
  const int s = series.step();

  auto sign_at = [&](int t, int n) {
    const Real v = detail::reduced_series(a, R * t / n, s);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  // signs[t] is the sign at r = R t / n; a doubling only evaluates the new midpoints.
  auto count = [](const std::vector<int>& signs) {
    int changes = 0;
    int previous_sign = 1;  // u > 0 just right of the origin since a_0 = 1
    for (std::size_t t = 1; t + 1 < signs.size(); ++t) {
      if (signs[t] == 0) continue;
      if (signs[t] != previous_sign) ++changes;
      previous_sign = signs[t];
    }
    return changes;
  };

  constexpr int kMaxGrid = 1 << 16;
  int n = grid_points;
  std::vector<int> signs(n + 1, 1);
  for (int t = 1; t < n; ++t) signs[t] = sign_at(t, n);
  int previous = count(signs);
  while (n < kMaxGrid) {
    std::vector<int> finer(2 * n + 1, 1);
    for (int t = 1; t < n; ++t) finer[2 * t] = signs[t];
    for (int t = 0; t < n; ++t) finer[2 * t + 1] = sign_at(2 * t + 1, 2 * n);
    n *= 2;
    signs = std::move(finer);
    const int current = count(signs);
    if (current == previous) return current;
    previous = current;
  }
  throw ResolutionError("node count did not stabilise up to " + std::to_string(kMaxGrid) +
                        " grid points");
}

std::vector<Real> wavefunction(const SeriesTable& series, const Real& lambda,
                               std::span<const Real> r_grid) {
  const std::vector<Real> a = series.coefficients_at(lambda);
  const Real& delta = series.channel().delta2;
  std::vector<Real> out;
  out.reserve(r_grid.size());
  for (const auto& r : r_grid) {
    if (r < 0) throw DomainError("wavefunction grid must be non-negative");
    if (r == 0) {
      out.emplace_back(0);
      continue;
    }
    detail::require_inside_radius(series.potential(), r);
    out.push_back(pow(r, delta) * detail::reduced_series(a, r, series.step()));
  }
  return out;
}

}  // namespace frobenius
