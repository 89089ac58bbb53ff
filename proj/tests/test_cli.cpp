#include "doctest.h"
#include "helpers.hpp"

#include "app.hpp"
#include "frobenius/errors.hpp"
#include "frobenius/potentials.hpp"

#include <sstream>

using namespace frobenius;
using namespace frobenius::app;
using testing::near;

TEST_CASE("grid and label parsing") {
  const auto g = parse_grid("-15:25:0.5");
  REQUIRE(g.size() == 81);
  CHECK(g.front() == -15);
  CHECK(g.back() == 25);
  CHECK(parse_grid("1.5, 2.5,3").size() == 3);
  CHECK(parse_label("1,0") == StateLabel{1, 0});
  CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_label("x"), ConfigError);
  CHECK(parse_mode("lambda-scan") == Mode::lambda_scan);
  CHECK_THROWS_AS(parse_mode("plot"), ConfigError);
}

TEST_CASE("lambda scan zeros and bounding intervals") {
  ScanOptions radial;
  radial.derivative = DerivativeCondition::radial;
  const auto scan =
      lambda_scan(harmonic_spec(Real(1)), Real(0), Real("2.5"), {Real(0), Real(12)}, 121, 120, radial);
  REQUIRE(scan.samples.size() == 121);
  REQUIRE(scan.roots.u.roots.size() >= 2);
  CHECK(near(scan.roots.u.roots[0], "1.5514217", "1e-7"));
  CHECK(near(scan.roots.u.roots[1], "4.1842613", "1e-7"));
  int inside = 0;
  for (const auto& s : scan.samples) {
    if (s.interval < 0) continue;
    ++inside;
    CHECK(s.u * s.du < 0);
  }
  CHECK(inside > 0);

  CHECK(lambda_scan(harmonic_spec(Real(1)), Real(0), Real("2.5"), {Real(3), Real(3)}, 10, 60)
            .samples.empty());
}

TEST_CASE("CSV round trip reproduces the printed values") {
  const auto scan =
      lambda_scan(harmonic_spec(Real(1)), Real(1), Real(2), {Real(1), Real(9)}, 33, 100);
  const Table table = lambda_scan_table(scan, 12);
  std::stringstream csv;
  write_csv(table, csv);
  const Table back = read_csv(csv);
  CHECK(back.header == table.header);
  CHECK(back.comments == table.comments);
  REQUIRE(back.rows.size() == scan.samples.size());
  for (std::size_t i = 0; i < scan.samples.size(); ++i) {
    CHECK(back.rows[i] == table.rows[i]);
    CHECK(back.rows[i][back.column("u")] == format_fixed(scan.samples[i].u, 12));
    CHECK(parse_real(back.rows[i][0]) == parse_real(format_fixed(scan.samples[i].lambda, 12)));
  }
}

TEST_CASE("empty window gives a header-only CSV") {
  RunConfig c;
  c.mode = Mode::lambda_scan;
  c.radii = {"2.5"};
  c.window = "4:4";
  c.output = "-";
  std::ostringstream out;
  std::ostringstream err;
  CHECK(run(c, out, err) == ExitCode::ok);
  std::istringstream in(out.str());
  const Table t = read_csv(in);
  CHECK(t.rows.empty());
  CHECK(t.header == std::vector<std::string>{"lambda", "u", "du", "interval"});
}

TEST_CASE("exit codes and field messages") {
  std::ostringstream out;
  std::ostringstream err;
  RunConfig bad;
  bad.mode = Mode::confined;
  bad.potential = "hulthen";
  bad.params = {{"delta", "1"}};
  bad.radii = {"7"};
  CHECK(run(bad, out, err) == ExitCode::error);
  CHECK(err.str().find("R:") != std::string::npos);

  RunConfig missing;
  missing.mode = Mode::confined;
  CHECK(run(missing, out, err) == ExitCode::error);

  RunConfig unknown;
  unknown.mode = Mode::confined;
  unknown.potential = "morse";
  unknown.radii = {"2"};
  std::ostringstream err2;
  CHECK(run(unknown, out, err2) == ExitCode::error);
  CHECK(err2.str().find("potential") != std::string::npos);

  RunConfig starved;
  starved.mode = Mode::unconfined;
  starved.K_start = 8;
  starved.K_max = 10;
  CHECK(run(starved, out, err) == ExitCode::partial);
}

TEST_CASE("confined and sweep rows") {
  RunConfig c;
  c.mode = Mode::sweep;
  c.ls = {0, 1};
  c.states = 1;
  c.radii = {"1.5", "2.5"};
  c.output = "-";
  c.decimals = 7;
  c.jobs = 2;
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(run(c, out, err) == ExitCode::ok);
  std::istringstream in(out.str());
  const Table t = read_csv(in);
  REQUIRE(t.rows.size() == 4);
  const auto lambda = t.column("lambda");
  CHECK(t.rows[0][lambda] == "2.5049762");
  CHECK(t.rows[1][lambda] == "4.9035904");
  CHECK(t.rows[2][lambda] == "1.5514217");
  CHECK(t.rows[3][lambda] == "2.6881440");
  CHECK(t.rows[1][t.column("above_ground")] == "2.3986142");
}

TEST_CASE("z sweep emits asymptote columns") {
  RunConfig c;
  c.mode = Mode::zsweep;
  c.z_range = "8,25";
  c.states = 2;
  c.tol = "1e-8";
  c.output = "-";
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(run(c, out, err) == ExitCode::ok);
  std::istringstream in(out.str());
  const Table t = read_csv(in);
  REQUIRE(t.rows.size() == 2);
  // Positive z: harmonic limit (2n + l + 3/2) sqrt(2z).
  CHECK(near(parse_real(t.rows[0][t.column("A_01")]), Real("2.5") * 4, Real("1e-8")));
  CHECK(near(parse_real(t.rows[0][t.column("E_00")]), "6.21722563", "1e-8"));
  CHECK(t.rows[0][t.column("dE_00")] == "0.00000000");
  const Real gap = parse_real(t.rows[1][t.column("dE_01")]);
  CHECK(abs(gap - sqrt(Real(50))) / sqrt(Real(50)) < Real("0.05"));
}

TEST_CASE("oracle and wavefunction modes") {
  RunConfig c;
  c.mode = Mode::oracle;
  c.states = 2;
  c.output = "-";
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(run(c, out, err) == ExitCode::ok);
  std::istringstream in(out.str());
  const Table t = read_csv(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::abs(std::stod(t.rows[1][t.column("energy")]) - 3.5) < 1e-6);

  RunConfig w;
  w.mode = Mode::wavefunction;
  w.lambda = "1.5";
  w.r_range = "0:3:1";
  w.output = "-";
  w.decimals = 12;
  std::ostringstream wout;
  REQUIRE(run(w, wout, err) == ExitCode::ok);
  std::istringstream win(wout.str());
  const Table wt = read_csv(win);
  REQUIRE(wt.rows.size() == 4);
  // The l = 0 ground state is r exp(-r^2 / 2).
  CHECK(near(parse_real(wt.rows[2][wt.column("u")]), 2 * exp(Real(-2)), Real("1e-11")));
}

TEST_CASE("published table comparison") {
  Table golden;
  golden.header = {"l", "R", "energy"};
  golden.add_row({"0", "2.50", "1.5514217"});
  golden.add_row({"0", "inf", "1.5"});
  Table computed;
  computed.header = {"l", "R", "energy"};
  computed.add_row({"0", "2.5", "1.55142165"});
  computed.add_row({"0", "inf", "1.50000001"});
  auto check = compare_tables(computed, golden, {"energy"}, 1e-7);
  CHECK(check.compared == 2);
  CHECK(check.mismatched == 0);
  check = compare_tables(computed, golden, {"energy"}, 1e-9);
  CHECK(check.mismatched == 2);
  CHECK_THROWS_AS(table_tolerance("table9"), ConfigError);
  CHECK(table_decimals("table4") == 13);
}
