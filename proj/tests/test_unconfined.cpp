#include "doctest.h"
#include "helpers.hpp"

#include "frobenius/errors.hpp"
#include "frobenius/potentials.hpp"
#include "frobenius/unconfined.hpp"

using namespace frobenius;
using testing::near;

namespace {

const KratzerSpec kKratzer{Real(4), Real(-8)};

}  // namespace

TEST_CASE("Kratzer brackets at fixed R") {
  const auto p = kratzer_spec(kKratzer);
  auto at5 = brackets_at_R(p, Real(1), Real(5), 2, 160);
  REQUIRE(at5.size() == 2);
  CHECK(near(at5[1].lower, "-1.8092879070838", "1e-12"));
  CHECK(near(at5[1].upper, "-1.3178526137388", "1e-12"));
  // Above V_eff(5, 1) = -1.4, so not yet a certified enclosure.
  CHECK_FALSE(at5[1].certified);
  CHECK(at5[0].certified);

  auto at8 = brackets_at_R(p, Real(1), Real(8), 2, 160);
  CHECK(near(at8[1].lower, "-1.4500438665400", "1e-12"));
  CHECK(near(at8[1].upper, "-1.4468612319721", "1e-12"));
  CHECK(at8[1].certified);
  CHECK(at8[1].K == 160);
  CHECK(at8[1].k == 1);
  CHECK(near(at8[1].width, at8[1].upper - at8[1].lower, Real("1e-45")));
  CHECK(near(at8[1].uncertainty(), at8[1].width / 2, Real("1e-45")));
}

TEST_CASE("harmonic bracket straddles the free level") {
  auto b = brackets_at_R(harmonic_spec(Real(1)), Real(0), Real("2.5"), 1, 120);
  CHECK(b[0].lower < Real("1.5"));
  CHECK(b[0].upper > Real("1.5"));
  CHECK(near(b[0].upper, "1.5514217", "1e-7"));
}

namespace {

// Closed form of the reduced solution u r^-s = e^{-kappa r} M(a, 2s, 2 kappa r),
// a = s + d_-1 / kappa, with Kummer's M summed directly.
Real kummer(const Real& a, const Real& b, const Real& x) {
  Real term = 1;
  Real sum = 1;
  for (int n = 0; n < 2000; ++n) {
    term *= (a + n) / (b + n) * x / (n + 1);
    sum += term;
    if (abs(term) < abs(sum) * ten_to_minus(static_cast<int>(working_digits()))) break;
  }
  return sum;
}

struct KratzerClosedForm {
  Real s = (1 + sqrt(Real(41))) / 2;  // d-2 = 4, l = 1
  Real d_m1 = -8;

  Real value(const Real& E, const Real& r) const {
    const Real kappa = sqrt(-2 * E);
    return exp(-kappa * r) * kummer(s + d_m1 / kappa, 2 * s, 2 * kappa * r);
  }
  Real derivative(const Real& E, const Real& r) const {
    const Real kappa = sqrt(-2 * E);
    const Real a = s + d_m1 / kappa;
    const Real b = 2 * s;
    return kappa * exp(-kappa * r) *
           (2 * a / b * kummer(a + 1, b + 1, 2 * kappa * r) - kummer(a, b, 2 * kappa * r));
  }
};

}  // namespace

TEST_CASE("Kratzer bracket ends are zeros of the closed-form solution") {
  const auto p = kratzer_spec(kKratzer);
  const KratzerClosedForm exact;
  const Real h = Real("1e-14");
  for (const char* R_text : {"5", "6", "6.5", "9", "14"}) {
    const Real R = Real(R_text);
    const auto b = brackets_at_R(p, Real(1), R, 2, 160)[1];
    CHECK(exact.value(b.upper - h, R) * exact.value(b.upper + h, R) < 0);
    CHECK(exact.derivative(b.lower - h, R) * exact.derivative(b.lower + h, R) < 0);
  }
}

TEST_CASE("Kratzer certification") {
  const auto p = kratzer_spec(kKratzer);
  RSchedule schedule;
  schedule.R0 = 5;
  schedule.dR = Real("0.5");
  schedule.tol = Real("1e-13");
  UnconfinedOptions options;
  options.K_start = 160;
  const auto cert = certify_state(p, Real(1), 1, schedule, options);
  REQUIRE(cert.result.converged);
  CHECK(near(cert.result.energy(), "-1.4476568219254", "1e-13"));
  CHECK(cert.result.width < Real("1e-13"));

  const Real exact = kratzer_exact_energy(kKratzer, 1, Real(1));
  const BracketResult* previous = nullptr;
  for (const auto& b : cert.trace) {
    CHECK(b.lower < b.upper);
    if (b.certified) {
      // The midpoint bound holds whenever the bracket encloses the level.
      CHECK(abs(b.energy() - exact) <= b.width / 2);
    }
    if (previous && previous->certified && b.certified) {
      CHECK(b.lower >= previous->lower);
      CHECK(b.upper <= previous->upper);
    }
    previous = &b;
  }
}

TEST_CASE("shrink holds on a fixed truncation for quartic z = 1") {
  const auto p = anharmonic_spec({2, Real(1)});
  Real lower = -infinity();
  Real upper = infinity();
  for (const char* R : {"2", "2.25", "2.5", "2.75", "3"}) {
    const auto b = brackets_at_R(p, Real(0), Real(R), 1, 160)[0];
    REQUIRE(b.certified);
    CHECK(b.lower > lower);
    CHECK(b.upper < upper);
    lower = b.lower;
    upper = b.upper;
  }
  CHECK(near((lower + upper) / 2, "3.05794573", "1e-8"));
}

TEST_CASE("harmonic unconfined spectrum") {
  const auto p = harmonic_spec(Real(1));
  for (int l = 0; l <= 1; ++l) {
    const auto out =
        solve_unconfined(p, Real(l), {0, 1}, default_schedule(p, Real(l), Real("1e-11")), {}, 2);
    for (int n = 0; n < 2; ++n) {
      CHECK(out[n].converged);
      CHECK(near(out[n].energy(), Real(2 * n + l) + Real("1.5"), Real("1e-10")));
    }
  }
  // Five dimensions at l = 0 behave like three dimensions at l = 1.
  const auto five = certify_state(p, effective_l(5, 0), 0,
                                  default_schedule(p, effective_l(5, 0), Real("1e-11")));
  const auto three = certify_state(p, Real(1), 0, default_schedule(p, Real(1), Real("1e-11")));
  CHECK(near(five.result.energy(), three.result.energy(), Real("1e-10")));
  CHECK(near(five.result.energy(), Real("2.5"), Real("1e-10")));
}

TEST_CASE("anharmonic spot values") {
  CHECK(near(anharmonic_energy({3, Real(1)}, {0, 0}, Real("1e-9")).energy(), "3.15630057",
             "1e-8"));
  CHECK(near(anharmonic_energy({4, Real("0.1")}, {0, 1}, Real("1e-9")).energy(), "5.50821786",
             "1e-8"));
}

TEST_CASE("labels") {
  const auto labels = lowest_labels(6);
  REQUIRE(labels.size() == 6);
  CHECK(labels[0] == StateLabel{0, 0});
  CHECK(labels[1] == StateLabel{0, 1});
  CHECK(labels[2] == StateLabel{0, 2});
  CHECK(labels[3] == StateLabel{1, 0});
  CHECK(labels[4] == StateLabel{0, 3});
  CHECK(labels[5] == StateLabel{1, 1});
}

TEST_CASE("z sweep") {
  const auto points = z_sweep(2, {{0, 0}, {1, 0}}, {Real("0.1"), Real(8)}, Real("1e-9"), {}, 2);
  REQUIRE(points.size() == 2);
  CHECK(points[0].converged);
  CHECK(near(points[0].energies[0].energy(), "2.46463653", "1e-8"));
  CHECK(near(points[1].energies[1].energy(), "15.02454165", "1e-8"));
  CHECK(near(points[1].excitation[1], points[1].energies[1].energy() - points[1].ground,
             Real("1e-40")));
  REQUIRE(points[1].asymptote[1]);
  CHECK(near(*points[1].asymptote[1], Real("3.5") * 4, Real("1e-40")));

  // Levels with equal 2n + l draw together as z grows.
  const auto far = z_sweep(2, {{0, 0}, {0, 2}, {1, 0}}, {Real(15), Real(25)}, Real("1e-9"));
  const Real gap15 = abs(far[0].energies[2].energy() - far[0].energies[1].energy()) / far[0].ground;
  const Real gap25 = abs(far[1].energies[2].energy() - far[1].energies[1].energy()) / far[1].ground;
  CHECK(gap25 < gap15);
  CHECK(gap25 < Real("0.01"));

  // A failing point is recorded and the sweep continues.
  UnconfinedOptions starved;
  starved.K_max = 45;
  const auto partial = z_sweep(2, {{0, 0}}, {Real(-12), Real(1)}, Real("1e-9"), starved);
  REQUIRE(partial.size() == 2);
  CHECK_FALSE(partial[0].converged);
}

TEST_CASE("level crossing without a sign change") {
  CHECK_THROWS_AS(find_level_crossing(2, {0, 0}, {0, 1}, {Real(-5), Real(-3)}, Real("1e-6")),
                  NoSignChange);
}

TEST_CASE("unconfined errors") {
  const auto h = hulthen_spec({Real("0.5"), 6});
  CHECK_THROWS_AS(brackets_at_R(h, Real(0), h.rho_V, 1, 60), ConvergenceError);
  CHECK_THROWS_AS(brackets_at_R(harmonic_spec(Real(1)), Real(0), Real(2), 0, 60), DomainError);
  RSchedule bad;
  bad.dR = 0;
  CHECK_THROWS_AS(certify_state(harmonic_spec(Real(1)), Real(0), 0, bad), DomainError);

  // Hulthen stops at the radius guard without claiming convergence.
  RSchedule schedule;
  schedule.tol = Real("1e-30");
  const auto guarded = certify_state(h, Real(0), 0, schedule);
  CHECK_FALSE(guarded.result.converged);
  CHECK(guarded.result.R <= h.rho_V * Real("0.9"));
}
