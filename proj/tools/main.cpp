#include "app.hpp"

#include <CLI11.hpp>

#include <iostream>

using frobenius::app::Mode;
using frobenius::app::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--precision", c.digits, "working precision in decimal digits")
      ->envname("FROBENIUS_PRECISION")
      ->capture_default_str();
  sub->add_option("--tol", c.tol, "target accuracy")->capture_default_str();
  sub->add_option("--K-start", c.K_start, "initial truncation order")->capture_default_str();
  sub->add_option("--K-max", c.K_max, "truncation ceiling")->capture_default_str();
  sub->add_option("--decimals", c.decimals, "fixed-point places in the output");
  sub->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
  sub->add_option("-o,--output", c.output, "CSV output path, '-' for stdout");
}

void add_potential(CLI::App* sub, RunConfig& c, bool with_z = true) {
  sub->add_option("--potential", c.potential, "harmonic | anharmonic | kratzer | hulthen | laurent")
      ->capture_default_str();
  std::vector<std::string> keys = {"omega", "J", "g", "d-2", "d-1", "delta", "P", "rho", "step"};
  if (with_z) keys.emplace_back("z");
  for (int i = 0; i < 10; ++i) keys.push_back("d" + std::to_string(i));
  for (const auto& key : keys) {
    sub->add_option_function<std::string>(
        "--" + key, [&c, key](const std::string& v) { c.params[key] = v; },
        "potential parameter " + key);
  }
  sub->add_option("--l", c.ls, "angular momenta")->delimiter(',');
  sub->add_option("--dimension", c.dimension, "space dimension D")->capture_default_str();
}

void add_states(CLI::App* sub, RunConfig& c) {
  sub->add_option("--states", c.states, "number of states")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision radial Schroedinger levels from truncated power series"};
  app.set_config("--config", "", "INI file; command-line flags override its values");
  app.require_subcommand(1);
  RunConfig c;

  auto* confined = app.add_subcommand("confined", "levels inside an impenetrable wall at R");
  add_potential(confined, c);
  add_states(confined, c);
  add_common(confined, c);
  confined->add_option("--R", c.radii, "wall radius")->required();

  auto* sweep = app.add_subcommand("sweep", "confined levels over a list of radii");
  add_potential(sweep, c);
  add_states(sweep, c);
  add_common(sweep, c);
  sweep->add_option("--R", c.radii, "radii as a list or start:stop:step")
      ->delimiter(',')
      ->required();

  auto* unconfined = app.add_subcommand("unconfined", "certified free levels by two-sided brackets");
  add_potential(unconfined, c);
  add_states(unconfined, c);
  add_common(unconfined, c);
  unconfined->add_option("--state", c.state_list, "explicit level indices k")->delimiter(',');
  unconfined->add_option_function<std::string>(
      "--R0", [&c](const std::string& v) { c.R0_override = v; }, "first radius");
  unconfined->add_option("--dR", c.dR, "radius step")->capture_default_str();

  auto* zsweep = app.add_subcommand("zsweep", "anharmonic levels against z");
  add_states(zsweep, c);
  add_common(zsweep, c);
  zsweep->add_option("--J", c.J, "V = z r^2 + r^(2J)")->capture_default_str();
  zsweep->add_option("--z", c.z_range, "z values as start:stop:step or a list")
      ->capture_default_str();

  auto* crossing = app.add_subcommand("crossing", "z where two anharmonic levels cross");
  add_common(crossing, c);
  crossing->add_option("--J", c.J)->capture_default_str();
  crossing->add_option("--a", c.state_a, "first state as n,l")->capture_default_str();
  crossing->add_option("--b", c.state_b, "second state as n,l")->capture_default_str();
  crossing->add_option("--z-window", c.z_window, "lo:hi")->capture_default_str();

  auto* wave = app.add_subcommand("wavefunction", "u(r) at a given energy");
  add_potential(wave, c);
  add_common(wave, c);
  wave->add_option("--lambda", c.lambda, "energy")->required();
  wave->add_option("--r", c.r_range, "start:stop:step or list")->capture_default_str();
  wave->add_option("--K", c.K, "truncation order")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "finite-difference cross-check levels");
  add_potential(oracle, c);
  add_states(oracle, c);
  add_common(oracle, c);
  oracle->add_option("--r-max", c.r_max)->capture_default_str();
  oracle->add_option("--points", c.points)->capture_default_str();

  auto* tables = app.add_subcommand("tables", "recompute a published table");
  add_common(tables, c);
  tables->add_option("--id", c.table_id, "table1 .. table6")->required();
  tables->add_option("--golden", c.golden, "expected CSV to compare against");

  auto* scan = app.add_subcommand("lambda-scan", "u(R, lambda) and u'(R, lambda) over a window");
  add_potential(scan, c);
  add_common(scan, c);
  scan->add_option("--R", c.radii, "boundary radius")->required();
  scan->add_option("--window", c.window, "lo:hi")->capture_default_str();
  scan->add_option("--samples", c.samples)->capture_default_str();
  scan->add_option("--K", c.K, "truncation order")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return frobenius::app::ExitCode::error;
  }

  for (auto* sub : app.get_subcommands()) {
    try {
      c.mode = frobenius::app::parse_mode(sub->get_name());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return frobenius::app::ExitCode::error;
    }
  }
  return frobenius::app::run(c, std::cout, std::cerr);
}
