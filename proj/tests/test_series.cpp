#include "doctest.h"
#include "helpers.hpp"

#include "frobenius/errors.hpp"
#include "frobenius/potentials.hpp"
#include "frobenius/series.hpp"

#include <random>

using namespace frobenius;
using testing::near;

namespace {

PotentialSpec mixed_laurent() {
  PotentialSpec p;
  p.d_m2 = Real("0.3");
  p.d_m1 = Real("-1.25");
  p.regular = {Real("0.2"), Real("-0.7"), Real("0.45"), Real("0.05")};
  return p;
}

}  // namespace

TEST_CASE("indicial exponents") {
  PotentialSpec free_particle;
  auto c = indicial_exponents(free_particle, Real(0));
  CHECK(c.delta1 == 0);
  CHECK(c.delta2 == 1);
  CHECK(indicial_exponents(free_particle, Real(1)).delta2 == 2);

  auto k = indicial_exponents(kratzer_spec({Real(4), Real(-8)}), Real(1));
  CHECK(near(k.delta2, (1 + sqrt(Real(41))) / 2, Real("1e-45")));
  CHECK(near(k.delta2, "3.70156", "1e-5"));
  CHECK(near(k.disc, k.delta2 - k.delta1, Real("1e-45")));
}

TEST_CASE("indicial domain errors") {
  PotentialSpec p;
  p.d_m2 = Real(-1) / 8;
  CHECK_THROWS_AS(indicial_exponents(p, Real(0)), DomainError);
  p.d_m2 = Real(-1);
  CHECK_THROWS_AS(p.validate(), DomainError);
  // Two dimensions, l = 0: l_eff = -1/2 gives a double indicial root.
  PotentialSpec flat;
  CHECK_THROWS_AS(indicial_exponents(flat, effective_l(2, 0)), DomainError);
}

TEST_CASE("hand-unrolled coefficients") {
  SUBCASE("harmonic, symbolic lambda") {
    auto t = build_series(harmonic_spec(Real(1)), Real(0), 6, std::nullopt);
    REQUIRE(t.mode() == SeriesMode::lambda_poly);
    const auto& a = t.polynomials();
    for (const auto& c : a[1]) CHECK(c == 0);
    REQUIRE(a[2].size() == 2);
    CHECK(a[2][0] == 0);
    CHECK(near(a[2][1], Real(-1) / 3, Real("1e-48")));
  }
  SUBCASE("Kratzer a_1") {
    auto t = build_series(kratzer_spec({Real(4), Real(-8)}), Real(1), 4, Real("-1.3"));
    CHECK(near(t.values()[1], Real(-16) / (1 + sqrt(Real(41))), Real("1e-45")));
  }
  SUBCASE("quartic stride 2") {
    auto t = build_series(anharmonic_spec({2, Real(1)}), Real(0), 4, std::nullopt);
    CHECK(t.step() == 2);
    const auto& a1 = t.polynomials()[1];
    REQUIRE(a1.size() == 2);
    CHECK(a1[0] == 0);
    CHECK(near(a1[1], Real(-1) / 3, Real("1e-48")));
  }
}

TEST_CASE("recurrence residual vanishes") {
  const PotentialSpec p = mixed_laurent();
  const Real l = Real("1.5");
  const Real lambda = Real("0.731");
  const int K = 60;
  auto t = build_series(p, l, K, lambda);
  const auto& a = t.values();
  const Real disc = t.channel().disc;
  auto d = [&](int i) { return i == -1 ? p.d_m1 : p.regular_coefficient(i); };
  for (int i = 1; i <= K; ++i) {
    Real lhs = a[i] * i * (i + disc);
    if (i >= 2) lhs += 2 * lambda * a[i - 2];
    for (int n = 0; n < i; ++n) lhs -= 2 * d(i - 2 - n) * a[n];
    CHECK(abs(lhs) <= Real("1e-40") * max(Real(1), abs(a[i])));
  }
}

TEST_CASE("lambda-poly and numeric tables agree") {
  const PotentialSpec p = mixed_laurent();
  auto poly = build_series(p, Real(0), 30, std::nullopt);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-5, 5);
  for (int trial = 0; trial < 5; ++trial) {
    const Real lambda = Real(dist(rng));
    const auto from_poly = poly.coefficients_at(lambda);
    const auto numeric = build_series(p, Real(0), 30, lambda).values();
    REQUIRE(from_poly.size() == numeric.size());
    for (std::size_t j = 0; j < numeric.size(); ++j) {
      CHECK(abs(from_poly[j] - numeric[j]) <= Real("1e-38") * max(Real(1), abs(numeric[j])));
    }
  }
  CHECK(poly.at(Real(2)).mode() == SeriesMode::numeric);
  CHECK(build_series(p, Real(0), 10, Real(1)).symbolic().mode() == SeriesMode::lambda_poly);
}

TEST_CASE("u(R) converges as K doubles") {
  const PotentialSpec p = harmonic_spec(Real(1));
  const Real R = 3;
  const Real lambda = Real("2.2");
  Real previous_gap = infinity();
  for (int K : {20, 40, 80}) {
    const auto u1 = boundary_values(build_series(p, Real(0), K, lambda), R, lambda).u;
    const auto u2 = boundary_values(build_series(p, Real(0), 2 * K, lambda), R, lambda).u;
    const Real gap = abs(u1 - u2);
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
  CHECK(previous_gap < Real("1e-20"));
}

TEST_CASE("derivative matches a central difference") {
  const PotentialSpec p = mixed_laurent();
  const Real lambda = Real("-0.4");
  auto t = build_series(p, Real(1), 80, lambda);
  const Real R = Real("1.7");
  const auto bv = boundary_values(t, R, lambda);
  Real previous_error = infinity();
  for (const char* h_text : {"1e-2", "1e-3", "1e-4"}) {
    const Real h(h_text);
    const Real up = boundary_values(t, R + h, lambda).u;
    const Real down = boundary_values(t, R - h, lambda).u;
    const Real error = abs((up - down) / (2 * h) - bv.du);
    CHECK(error < previous_error);
    previous_error = error;
    // O(h^2): the error falls by about 100 per decade of h.
    CHECK(error < 10 * h * h * max(Real(1), abs(bv.du)));
  }
  // Hardware doubles give the same derivative to difference accuracy.
  const double hd = 1e-5;
  const double rd = 1.7;
  auto u_at = [&](double r) { return to_double(boundary_values(t, Real(r), lambda).u); };
  CHECK(std::abs((u_at(rd + hd) - u_at(rd - hd)) / (2 * hd) - to_double(bv.du)) < 1e-6);
}

TEST_CASE("reduced series tends to a_0 = 1 at the origin") {
  const PotentialSpec p = mixed_laurent();
  const Real lambda = Real("0.5");
  auto t = build_series(p, Real(2), 40, lambda);
  const Real delta = t.channel().delta2;
  std::vector<Real> r = {Real("1e-2"), Real("1e-4"), Real("1e-8")};
  const auto u = wavefunction(t, lambda, r);
  Real previous = infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Real gap = abs(u[i] / pow(r[i], delta) - 1);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < Real("1e-7"));
  CHECK(wavefunction(t, lambda, std::vector<Real>{Real(0)})[0] == 0);
}

TEST_CASE("harmonic ground state in closed form") {
  const PotentialSpec p = harmonic_spec(Real(1));
  const Real lambda = Real("1.5");
  auto t = build_series(p, Real(0), 200, lambda);
  // At lambda = 3/2 the series sums to r exp(-r^2/2), so u(4) = 4 e^-8.
  const auto bv = boundary_values(t, Real(4), lambda);
  CHECK(near(bv.u, 4 * exp(Real(-8)), Real("1e-25")));
  CHECK(abs(bv.u) < Real("2e-3"));

  std::vector<Real> grid;
  for (int i = 1; i <= 30; ++i) grid.push_back(Real(i) / 10);
  const auto u = wavefunction(t, lambda, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(near(u[i], grid[i] * exp(-grid[i] * grid[i] / 2), Real("1e-25")));
  }
}

TEST_CASE("boundary value errors") {
  const PotentialSpec h = hulthen_spec({Real("0.5"), 6});
  auto t = build_series(h, Real(0), 40, Real(0));
  CHECK_THROWS_AS(boundary_values(t, h.rho_V, Real(0)), ConvergenceError);
  CHECK_THROWS_AS(node_count(t, Real(0), h.rho_V + 1), ConvergenceError);
  CHECK_THROWS_AS(wavefunction(t, Real(0), std::vector<Real>{h.rho_V * 2}), ConvergenceError);

  WorkingPrecision low(20);
  const Real lambda = Real("1.5");
  auto heavy = build_series(harmonic_spec(Real(1)), Real(0), 300, lambda);
  CHECK_THROWS_AS(boundary_values(heavy, Real(10), lambda, Cancellation::strict), PrecisionError);
  const auto reported = boundary_values(heavy, Real(10), lambda, Cancellation::report);
  CHECK_FALSE(reported.u_reliable());
}

TEST_CASE("node counts follow the level index") {
  const PotentialSpec p = harmonic_spec(Real(1));
  auto t = build_series(p, Real(0), 120, Real(0));
  CHECK(node_count(t, Real("1.5514217"), Real("2.5")) == 0);
  CHECK(node_count(t, Real("4.1842613"), Real("2.5")) == 1);
  CHECK(node_count(t, Real("-3"), Real("2.5")) == 0);
  CHECK(node_count(t, Real("5"), Real("2.5")) == 2);

  // Kratzer at the certified E_11 has one interior node on (0, 14).
  auto k = build_series(kratzer_spec({Real(4), Real(-8)}), Real(1), 160, Real(0));
  CHECK(node_count(k, Real("-1.4476568219254"), Real(14)) == 1);
}
