#include "app.hpp"

#include "frobenius/errors.hpp"
#include "frobenius/oracle.hpp"
#include "frobenius/potentials.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace frobenius::app {

// ---------------------------------------------------------------------------
// Table I/O

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw ConfigError("row has " + std::to_string(row.size()) + " cells, header has " +
                      std::to_string(header.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("table has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::string join(const std::vector<std::string>& cells, char sep) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += sep;
    line += cells[i];
  }
  return line;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  out << join(table.header, ',') << '\n';
  for (const auto& row : table.rows) out << join(row, ',') << '\n';
}

void write_aligned(const Table& table, std::ostream& out) {
  std::vector<std::size_t> width(table.header.size());
  for (std::size_t i = 0; i < table.header.size(); ++i) width[i] = table.header[i].size();
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      out << std::setw(static_cast<int>(width[i])) << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(trim(line.substr(1)));
      continue;
    }
    auto cells = split(line, ',');
    for (auto& c : cells) c = trim(c);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      table.add_row(std::move(cells));
    }
  }
  if (!have_header) throw ConfigError("CSV input has no header row");
  return table;
}

Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// Parsing helpers

Mode parse_mode(const std::string& name) {
  static const std::map<std::string, Mode> modes = {
      {"confined", Mode::confined},         {"sweep", Mode::sweep},
      {"unconfined", Mode::unconfined},     {"zsweep", Mode::zsweep},
      {"crossing", Mode::crossing},         {"wavefunction", Mode::wavefunction},
      {"oracle", Mode::oracle},             {"tables", Mode::tables},
      {"lambda-scan", Mode::lambda_scan},
  };
  const auto it = modes.find(name);
  if (it == modes.end()) throw ConfigError("mode: unknown value '" + name + "'");
  return it->second;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::confined: return "confined";
    case Mode::sweep: return "sweep";
    case Mode::unconfined: return "unconfined";
    case Mode::zsweep: return "zsweep";
    case Mode::crossing: return "crossing";
    case Mode::wavefunction: return "wavefunction";
    case Mode::oracle: return "oracle";
    case Mode::tables: return "tables";
    case Mode::lambda_scan: return "lambda-scan";
  }
  return "?";
}

namespace {

Real parse_field(const std::string& field, const std::string& text) {
  try {
    return parse_real(text);
  } catch (const std::exception&) {
    throw ConfigError(field + ": '" + text + "' is not a number");
  }
}

std::pair<Real, Real> parse_pair(const std::string& field, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError(field + ": expected 'lo:hi', got '" + text + "'");
  return {parse_field(field, trim(parts[0])), parse_field(field, trim(parts[1]))};
}

std::string scientific(const Real& value) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << to_double(value);
  return out.str();
}

int default_decimals(const Real& tol) {
  const double t = to_double(tol);
  if (!(t > 0)) return 10;
  return std::clamp(static_cast<int>(std::ceil(-std::log10(t) - 1e-9)), 6, 40);
}

}  // namespace

std::vector<Real> parse_grid(const std::string& text) {
  std::vector<Real> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid: expected 'start:stop:step', got '" + text + "'");
    const Real start = parse_field("grid", trim(parts[0]));
    const Real stop = parse_field("grid", trim(parts[1]));
    const Real step = parse_field("grid", trim(parts[2]));
    if (!(step > 0)) throw ConfigError("grid: step must be positive");
    const long count = std::lround(std::floor(to_double((stop - start) / step) + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + step * i);
    return out;
  }
  for (const auto& cell : split(text, ',')) {
    if (!trim(cell).empty()) out.push_back(parse_field("grid", trim(cell)));
  }
  return out;
}

StateLabel parse_label(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ConfigError("state: expected 'n,l', got '" + text + "'");
  try {
    return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw ConfigError("state: expected integers in '" + text + "'");
  }
}

void RunConfig::validate() const {
  if (digits < 20 || digits > 2000) throw ConfigError("precision: must lie in [20, 2000] digits");
  if (states < 1) throw ConfigError("states: must be at least 1");
  if (K_start < 4 || K_max < K_start) throw ConfigError("K-max: must be at least K-start (>= 4)");
  if (jobs < 1) throw ConfigError("jobs: must be at least 1");
  if (!(parse_field("tol", tol) > 0)) throw ConfigError("tol: must be positive");
  if (dimension < 2) throw ConfigError("dimension: must be at least 2");
  for (int l : ls) {
    if (l < 0) throw ConfigError("l: must be non-negative");
  }
  for (int k : state_list) {
    if (k < 0) throw ConfigError("state: must be non-negative");
  }

  const bool needs_potential = mode != Mode::tables && mode != Mode::zsweep && mode != Mode::crossing;
  if (needs_potential) {
    try {
      const PotentialSpec p = catalog_potential(potential, params);
      if (p.confined_radius()) {
        for (const auto& r : radii) {
          if (!(parse_field("R", r) < p.rho_V)) {
            throw ConfigError("R: " + r + " is not below the convergence radius " +
                              format_fixed(p.rho_V, 6) + " of " + potential);
          }
        }
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("potential: ") + e.what());
    }
  }
  switch (mode) {
    case Mode::confined:
    case Mode::lambda_scan:
      if (radii.size() != 1) throw ConfigError("R: exactly one radius required");
      break;
    case Mode::sweep:
      if (radii.empty()) throw ConfigError("R: at least one radius required");
      for (const auto& r : radii) {
        if (!(parse_field("R", r) > 0)) throw ConfigError("R: must be positive");
      }
      break;
    case Mode::zsweep:
    case Mode::crossing:
      if (J < 2) throw ConfigError("J: must be at least 2");
      break;
    case Mode::wavefunction:
      if (lambda.empty()) throw ConfigError("lambda: required for wavefunction");
      break;
    case Mode::oracle:
      if (!(r_max > 0) || points < 50) throw ConfigError("r-max/points: invalid oracle grid");
      break;
    case Mode::tables:
      if (table_id.empty()) throw ConfigError("id: required for tables");
      table_tolerance(table_id);
      break;
    case Mode::unconfined:
      break;
  }
  if (mode == Mode::confined || mode == Mode::lambda_scan) {
    if (!(parse_field("R", radii.front()) > 0)) throw ConfigError("R: must be positive");
  }
  if (mode == Mode::lambda_scan) {
    const auto [lo, hi] = parse_pair("window", window);
    if (hi < lo) throw ConfigError("window: lo must not exceed hi");
    if (samples < 2) throw ConfigError("samples: must be at least 2");
  }
}

// ---------------------------------------------------------------------------
// lambda scan

LambdaScan lambda_scan(const PotentialSpec& potential, const Real& l, const Real& R,
                       const Window& window, int samples, int K, const ScanOptions& scan) {
  LambdaScan out;
  if (!(window.hi > window.lo)) return out;
  const SeriesTable series = build_series(potential, l, K, window.lo);
  out.roots = scan_interleaved(series, R, window, 64, scan);
  const auto& lows = out.roots.du.roots;
  const auto& highs = out.roots.u.roots;
  out.samples.reserve(samples);
  for (int t = 0; t < samples; ++t) {
    ScanSample s;
    s.lambda = window.lo + (window.hi - window.lo) * t / (samples - 1);
    const BoundaryValues bv = boundary_values(series, R, s.lambda, Cancellation::report);
    s.u = bv.u;
    s.du = boundary_function(bv, RootKind::du, scan.derivative);
    for (std::size_t k = 0; k < highs.size() && k < lows.size(); ++k) {
      if (s.lambda > lows[k] && s.lambda < highs[k]) s.interval = static_cast<int>(k);
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

Table lambda_scan_table(const LambdaScan& scan, int decimals) {
  Table t;
  t.comments.push_back("u(R, lambda) and its derivative at the boundary");
  t.comments.push_back("interval = k inside the bounding interval (lambda'_k, lambda_k), else -1");
  const auto& lows = scan.roots.du.roots;
  const auto& highs = scan.roots.u.roots;
  for (std::size_t k = 0; k < highs.size() && k < lows.size(); ++k) {
    t.comments.push_back("bounding interval " + std::to_string(k) + ": " +
                         format_fixed(lows[k], decimals) + " " + format_fixed(highs[k], decimals));
  }
  t.header = {"lambda", "u", "du", "interval"};
  for (const auto& s : scan.samples) {
    t.add_row({format_fixed(s.lambda, decimals), format_fixed(s.u, decimals),
               format_fixed(s.du, decimals), std::to_string(s.interval)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Published tables

namespace {

struct TableInfo {
  double tolerance;
  int decimals;
  std::vector<std::string> values;
};

const std::map<std::string, TableInfo>& table_infos() {
  static const std::map<std::string, TableInfo> infos = {
      {"table1", {1e-7, 7, {"energy"}}},          {"table2", {1e-8, 8, {"energy"}}},
      {"table3", {1e-7, 7, {"energy"}}},          {"table4", {1e-12, 13, {"upper", "lower"}}},
      {"table5", {1e-8, 8, {"energy"}}},          {"table6", {1e-8, 8, {"energy"}}},
  };
  return infos;
}

const TableInfo& table_info(const std::string& id) {
  const auto it = table_infos().find(id);
  if (it == table_infos().end()) {
    throw ConfigError("id: unknown table '" + id + "' (expected table1 .. table6)");
  }
  return it->second;
}

std::string key_text(const std::string& cell) {
  double v = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size()) return cell;
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

// Tolerances used for the unconfined columns, one decade below the table's.
const Real kFreeTol = Real("1e-10");

Table table1(int decimals, int jobs) {
  Table t;
  t.comments = {"confined harmonic oscillator omega = 1", "R = inf rows are the free levels"};
  t.header = {"l", "n", "R", "energy"};
  const PotentialSpec h = harmonic_spec(Real(1));
  const std::vector<Real> radii = {Real("1.5"), Real("2.5"), Real(3), Real("3.5"), Real(4)};
  const auto rows = r_sweep(h, {Real(0), Real(1), Real(2)}, 2, radii, Real("1e-10"), {}, jobs);
  const std::vector<StateLabel> wanted = {{0, 0}, {0, 1}, {1, 0}, {0, 2}};  // (n, l)
  for (const auto& state : wanted) {
    for (const auto& row : rows) {
      if (row.n == state.n && row.l == state.l) {
        t.add_row({std::to_string(state.l), std::to_string(state.n), format_full(row.R),
                   format_fixed(row.lambda, decimals)});
      }
    }
  }
  std::vector<BracketResult> free(wanted.size());
  detail::parallel_for(wanted.size(), jobs, [&](std::size_t i) {
    const Real l = wanted[i].l;
    free[i] = certify_state(h, l, wanted[i].n, default_schedule(h, l, kFreeTol)).result;
  });
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (!free[i].converged) throw ConvergenceError("free harmonic level did not converge");
    t.add_row({std::to_string(wanted[i].l), std::to_string(wanted[i].n), "inf",
               format_fixed(free[i].energy(), decimals)});
  }
  return t;
}

Table table2(int decimals, int jobs) {
  Table t;
  t.comments = {"confined quartic oscillator V = z r^2 + r^4"};
  t.header = {"l", "n", "z", "R", "energy"};
  const std::vector<Real> radii = {Real("0.5"), Real(1), Real("1.5"), Real(2), Real("2.5")};
  for (int l : {0, 1}) {
    for (int z : {5, 4, 3, -1, -3}) {
      const auto rows = r_sweep(anharmonic_spec({2, Real(z)}), {Real(l)}, 1, radii, Real("1e-11"),
                                {}, jobs);
      for (const auto& row : rows) {
        t.add_row({std::to_string(l), "0", std::to_string(z), format_full(row.R),
                   format_fixed(row.lambda, decimals)});
      }
    }
  }
  return t;
}

Table table3(int decimals, int jobs) {
  Table t;
  t.comments = {"confined Hulthen potential", "R = inf rows are the free levels"};
  t.header = {"l", "n", "delta", "R", "energy"};
  struct Job {
    int l;
    int n;
    std::string delta;
    std::string R;
  };
  std::vector<Job> work;
  for (const auto& [l, n] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}) {
    for (const char* delta : {"0.05", "0.075"}) {
      for (const char* R : {"4", "6", "8", "12", "inf"}) work.push_back({l, n, delta, R});
    }
  }
  std::vector<Real> values(work.size());
  detail::parallel_for(work.size(), jobs, [&](std::size_t i) {
    const Job& job = work[i];
    const Real delta = parse_real(job.delta);
    if (job.R == "inf") {
      if (job.l == 0) {
        values[i] = hulthen_exact_energy(delta, job.n);
      } else {
        const PotentialSpec p = hulthen_spec({delta, 30});
        const BracketResult b =
            certify_state(p, Real(job.l), job.n, default_schedule(p, Real(job.l), kFreeTol)).result;
        if (!b.converged) throw ConvergenceError("free Hulthen level did not converge");
        values[i] = b.energy();
      }
      return;
    }
    auto family = [delta](int P) { return hulthen_spec({delta, P}); };
    values[i] = solve_confined_adaptive(family, 4, Real(job.l), parse_real(job.R), job.n + 1,
                                        Real("1e-10"))
                    .states[job.n]
                    .lambda;
  });
  for (std::size_t i = 0; i < work.size(); ++i) {
    t.add_row({std::to_string(work[i].l), std::to_string(work[i].n), work[i].delta, work[i].R,
               format_fixed(values[i], decimals)});
  }
  return t;
}

Table table4(int decimals, int jobs) {
  Table t;
  t.comments = {"Kratzer d-2 = 4 d-1 = -8 l = 1 state k = 1 with K = 160"};
  t.header = {"i", "R0", "dR", "R", "upper", "lower"};
  struct Step {
    int i;
    Real R0;
    Real dR;
  };
  std::vector<Step> steps;
  for (int i = 0; i < 4; ++i) steps.push_back({i, Real(5), Real("0.5")});
  for (int i = 0; i < 4; ++i) steps.push_back({i, Real(8), Real(1)});
  for (int i = 0; i < 3; ++i) steps.push_back({i, Real(14), Real(2)});
  const PotentialSpec p = kratzer_spec({Real(4), Real(-8)});
  std::vector<BracketResult> brackets(steps.size());
  detail::parallel_for(steps.size(), jobs, [&](std::size_t i) {
    brackets[i] = brackets_at_R(p, Real(1), steps[i].R0 + steps[i].dR * steps[i].i, 2, 160)[1];
  });
  for (std::size_t i = 0; i < steps.size(); ++i) {
    t.add_row({std::to_string(steps[i].i), format_full(steps[i].R0), format_full(steps[i].dR),
               format_full(brackets[i].R), format_fixed(brackets[i].upper, decimals),
               format_fixed(brackets[i].lower, decimals)});
  }
  return t;
}

struct FreeJob {
  int J;
  std::string z;
  StateLabel state;
};

Table free_anharmonic(const std::vector<FreeJob>& work, bool with_J, int decimals, int jobs) {
  std::vector<BracketResult> out(work.size());
  detail::parallel_for(work.size(), jobs, [&](std::size_t i) {
    out[i] = anharmonic_energy({work[i].J, parse_real(work[i].z)}, work[i].state, kFreeTol);
  });
  Table t;
  if (with_J) t.header.push_back("J");
  for (const char* h : {"z", "n", "l", "energy"}) t.header.emplace_back(h);
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!out[i].converged) {
      throw ConvergenceError("E_" + std::to_string(work[i].state.n) +
                             std::to_string(work[i].state.l) + " at z = " + work[i].z +
                             " did not converge");
    }
    std::vector<std::string> row;
    if (with_J) row.push_back(std::to_string(work[i].J));
    row.push_back(work[i].z);
    row.push_back(std::to_string(work[i].state.n));
    row.push_back(std::to_string(work[i].state.l));
    row.push_back(format_fixed(out[i].energy(), decimals));
    t.add_row(std::move(row));
  }
  return t;
}

Table table5(int decimals, int jobs) {
  std::vector<FreeJob> work;
  for (int z = -10; z <= -6; ++z) {
    for (int l = 0; l < 5; ++l) work.push_back({2, std::to_string(z), {0, l}});
  }
  Table t = free_anharmonic(work, false, decimals, jobs);
  t.comments = {"unconfined quartic oscillator E_nl for negative z"};
  return t;
}

Table table6(int decimals, int jobs) {
  const std::vector<std::pair<int, std::vector<std::string>>> rows = {
      {2, {"-5", "-4", "-3", "-2", "0.1", "0.5", "1", "2", "5", "8"}},
      {3, {"-8", "-5", "-2", "-1", "0.1", "1"}},
      {4, {"-8", "-5", "-2", "-1", "0.1", "1"}},
      {5, {"0.1", "1"}},
  };
  std::vector<FreeJob> work;
  for (const auto& [J, zs] : rows) {
    for (const auto& z : zs) {
      for (const auto& state : lowest_labels(5)) work.push_back({J, z, state});
    }
  }
  Table t = free_anharmonic(work, true, decimals, jobs);
  t.comments = {"unconfined anharmonic oscillators V = z r^2 + r^(2J)"};
  return t;
}

}  // namespace

double table_tolerance(const std::string& id) { return table_info(id).tolerance; }
int table_decimals(const std::string& id) { return table_info(id).decimals; }
std::vector<std::string> table_value_columns(const std::string& id) { return table_info(id).values; }

Table reproduce_table(const std::string& id, int jobs, int decimals) {
  const int places = decimals < 0 ? table_decimals(id) : decimals;
  if (id == "table1") return table1(places, jobs);
  if (id == "table2") return table2(places, jobs);
  if (id == "table3") return table3(places, jobs);
  if (id == "table4") return table4(places, jobs);
  if (id == "table5") return table5(places, jobs);
  if (id == "table6") return table6(places, jobs);
  throw ConfigError("id: unknown table '" + id + "' (expected table1 .. table6)");
}

TableCheck compare_tables(const Table& computed, const Table& golden,
                          const std::vector<std::string>& value_columns, double tolerance) {
  auto keys_of = [&](const Table& t) {
    std::vector<std::size_t> keys;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (std::find(value_columns.begin(), value_columns.end(), t.header[i]) == value_columns.end()) {
        keys.push_back(i);
      }
    }
    return keys;
  };
  auto key_of = [](const Table& t, const std::vector<std::size_t>& keys, const auto& row) {
    std::string key;
    for (std::size_t k : keys) key += t.header[k] + "=" + key_text(row[k]) + " ";
    return key;
  };

  const auto computed_keys = keys_of(computed);
  std::map<std::string, const std::vector<std::string>*> index;
  for (const auto& row : computed.rows) index[key_of(computed, computed_keys, row)] = &row;

  TableCheck check;
  const auto golden_keys = keys_of(golden);
  for (const auto& row : golden.rows) {
    const std::string key = key_of(golden, golden_keys, row);
    const auto it = index.find(key);
    if (it == index.end()) {
      ++check.mismatched;
      check.failures.push_back(key + ": missing from the computed table");
      continue;
    }
    for (const auto& column : value_columns) {
      ++check.compared;
      const double expected = std::stod(row[golden.column(column)]);
      const double got = std::stod((*it->second)[computed.column(column)]);
      const double error = std::abs(got - expected);
      check.max_error = std::max(check.max_error, error);
      if (!(error <= tolerance)) {
        ++check.mismatched;
        std::ostringstream line;
        line << key << column << ": computed " << (*it->second)[computed.column(column)]
             << " expected " << row[golden.column(column)] << " |diff| " << std::setprecision(3)
             << error;
        check.failures.push_back(line.str());
      }
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// run

namespace {

std::vector<Real> shifted_ls(const RunConfig& c) {
  std::vector<Real> out;
  for (int l : c.ls) out.push_back(effective_l(c.dimension, l));
  return out;
}

std::string l_text(const Real& l) { return format_full(l); }

ConfinedResult confined_for(const RunConfig& c, const PotentialSpec& p, const Real& l,
                            const Real& R, const Real& tol, const ConfinedOptions& options) {
  if (c.potential == "hulthen" && !c.params.count("P")) {
    const Real delta = parse_real(c.params.at("delta"));
    auto family = [delta](int P) { return hulthen_spec({delta, P}); };
    return solve_confined_adaptive(family, 4, l, R, c.states, tol, options);
  }
  return solve_confined(p, l, R, c.states, tol, options);
}

struct Emitted {
  Table table;
  bool partial = false;
};

Emitted execute(const RunConfig& c) {
  Emitted e;
  Table& t = e.table;
  const Real tol = parse_real(c.tol);
  const int decimals = c.decimals >= 0 ? c.decimals : default_decimals(tol);
  t.comments.push_back("mode " + mode_name(c.mode) + ", " + std::to_string(working_digits()) +
                       " digits");

  ConfinedOptions confined;
  confined.K_start = c.K_start;
  confined.K_max = c.K_max;
  UnconfinedOptions free;
  free.K_start = c.K_start;
  free.K_max = c.K_max;

  switch (c.mode) {
    case Mode::confined: {
      const PotentialSpec p = catalog_potential(c.potential, c.params);
      const Real R = parse_real(c.radii.front());
      t.comments.push_back("potential " + c.potential + ", R = " + c.radii.front());
      t.header = {"l", "n", "R", "lambda", "K"};
      for (const auto& l : shifted_ls(c)) {
        const ConfinedResult r = confined_for(c, p, l, R, tol, confined);
        for (const auto& s : r.states) {
          t.add_row({l_text(l), std::to_string(s.n), format_full(R), format_fixed(s.lambda, decimals),
                     std::to_string(r.K_used)});
        }
      }
      break;
    }
    case Mode::sweep: {
      const PotentialSpec p = catalog_potential(c.potential, c.params);
      std::vector<Real> radii;
      for (const auto& r : c.radii) {
        for (const auto& v : parse_grid(r)) radii.push_back(v);
      }
      t.comments.push_back("potential " + c.potential +
                           ", above_ground = lambda_nl(R) - lambda_00(R)");
      t.header = {"R", "l", "n", "lambda", "above_ground", "K"};
      for (const auto& row : r_sweep(p, shifted_ls(c), c.states, radii, tol, confined, c.jobs)) {
        t.add_row({format_full(row.R), l_text(row.l), std::to_string(row.n),
                   format_fixed(row.lambda, decimals), format_fixed(row.above_ground, decimals),
                   std::to_string(row.K_used)});
      }
      break;
    }
    case Mode::unconfined: {
      const PotentialSpec p = catalog_potential(c.potential, c.params);
      std::vector<int> states = c.state_list;
      if (states.empty()) {
        for (int k = 0; k < c.states; ++k) states.push_back(k);
      }
      t.comments.push_back("potential " + c.potential +
                           ", energy = bracket midpoint, error bound = width / 2");
      t.header = {"l", "k", "energy", "lower", "upper", "width", "R", "K", "converged"};
      for (const auto& l : shifted_ls(c)) {
        RSchedule schedule = default_schedule(p, l, tol);
        if (c.R0_override) schedule.R0 = parse_real(*c.R0_override);
        schedule.dR = parse_real(c.dR);
        const auto results = solve_unconfined(p, l, states, schedule, free, c.jobs);
        for (std::size_t i = 0; i < results.size(); ++i) {
          const auto& b = results[i];
          e.partial = e.partial || !b.converged;
          t.add_row({l_text(l), std::to_string(states[i]), format_fixed(b.energy(), decimals),
                     format_fixed(b.lower, decimals), format_fixed(b.upper, decimals),
                     scientific(b.width), format_full(b.R), std::to_string(b.K),
                     b.converged ? "1" : "0"});
        }
      }
      break;
    }
    case Mode::zsweep: {
      const auto labels = lowest_labels(c.states);
      const auto zs = parse_grid(c.z_range);
      t.comments.push_back("V = z r^2 + r^" + std::to_string(2 * c.J) +
                           "; dE_nl = E_nl - E_00; A_nl = large-|z| estimate of E_nl (blank where undefined)");
      t.header = {"z"};
      for (const auto& s : labels) t.header.push_back("E_" + std::to_string(s.n) + std::to_string(s.l));
      for (const auto& s : labels) t.header.push_back("dE_" + std::to_string(s.n) + std::to_string(s.l));
      for (const auto& s : labels) t.header.push_back("A_" + std::to_string(s.n) + std::to_string(s.l));
      t.header.push_back("converged");
      for (const auto& point : z_sweep(c.J, labels, zs, tol, free, c.jobs)) {
        e.partial = e.partial || !point.converged;
        std::vector<std::string> row = {format_full(point.z)};
        for (const auto& b : point.energies) {
          row.push_back(b.converged ? format_fixed(b.energy(), decimals) : "nan");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
          row.push_back(point.energies[i].converged && point.energies[0].converged
                            ? format_fixed(point.excitation[i], decimals)
                            : "nan");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
          const auto& a = point.asymptote[i];
          row.push_back(a ? format_fixed(*a, decimals) : "");
        }
        row.push_back(point.converged ? "1" : "0");
        t.add_row(std::move(row));
      }
      break;
    }
    case Mode::crossing: {
      const StateLabel a = parse_label(c.state_a);
      const StateLabel b = parse_label(c.state_b);
      const auto [lo, hi] = parse_pair("z-window", c.z_window);
      const CrossingResult r = find_level_crossing(c.J, a, b, {lo, hi}, tol, free);
      t.header = {"J", "a", "b", "z", "width", "energy", "evaluations"};
      t.add_row({std::to_string(c.J), std::to_string(a.n) + std::to_string(a.l),
                 std::to_string(b.n) + std::to_string(b.l), format_fixed(r.z, decimals),
                 scientific(r.width), format_fixed(r.energy, decimals),
                 std::to_string(r.evaluations)});
      break;
    }
    case Mode::wavefunction: {
      const PotentialSpec p = catalog_potential(c.potential, c.params);
      const Real lambda = parse_real(c.lambda);
      const auto rs = parse_grid(c.r_range);
      t.comments.push_back("unnormalized u(r) at lambda = " + c.lambda);
      t.header = {"l", "r", "u"};
      for (const auto& l : shifted_ls(c)) {
        const SeriesTable series = build_series(p, l, c.K, lambda);
        const auto u = wavefunction(series, lambda, rs);
        for (std::size_t i = 0; i < rs.size(); ++i) {
          t.add_row({l_text(l), format_full(rs[i]), format_fixed(u[i], decimals)});
        }
      }
      break;
    }
    case Mode::oracle: {
      t.comments.push_back("finite-difference Dirichlet levels on (0, " + std::to_string(c.r_max) +
                           "), extrapolated");
      t.header = {"l", "n", "energy"};
      for (int l : c.ls) {
        GridProblem g;
        g.r_max = c.r_max;
        g.points = c.points;
        g.l = to_double(effective_l(c.dimension, l));
        g.potential = direct_potential(c.potential, c.params);
        OracleOptions options;
        options.tolerance = std::max(1e-8, to_double(tol));
        const auto levels = oracle_eigenvalues(g, c.states, options);
        for (std::size_t n = 0; n < levels.size(); ++n) {
          std::ostringstream v;
          v << std::fixed << std::setprecision(std::min(decimals, 10)) << levels[n];
          t.add_row({std::to_string(l), std::to_string(n), v.str()});
        }
      }
      break;
    }
    case Mode::tables: {
      t = reproduce_table(c.table_id, c.jobs, c.decimals);
      break;
    }
    case Mode::lambda_scan: {
      const PotentialSpec p = catalog_potential(c.potential, c.params);
      const auto [lo, hi] = parse_pair("window", c.window);
      ScanOptions scan;
      scan.derivative = DerivativeCondition::radial;
      const auto scan_result = lambda_scan(p, shifted_ls(c).front(), parse_real(c.radii.front()),
                                           {lo, hi}, c.samples, c.K, scan);
      t = lambda_scan_table(scan_result, c.decimals >= 0 ? c.decimals : 10);
      break;
    }
  }
  return e;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    WorkingPrecision precision(config.digits);
    Emitted e = execute(config);
    if (config.output == "-") {
      write_csv(e.table, out);
    } else {
      if (!config.output.empty()) {
        std::ofstream file(config.output);
        if (!file) throw ConfigError("output: cannot write '" + config.output + "'");
        write_csv(e.table, file);
      }
      write_aligned(e.table, out);
    }
    if (config.mode == Mode::tables && !config.golden.empty()) {
      const Table golden = read_csv_file(config.golden);
      const TableCheck check = compare_tables(e.table, golden, table_value_columns(config.table_id),
                                              table_tolerance(config.table_id));
      for (const auto& f : check.failures) err << "mismatch: " << f << '\n';
 err << check.failures.size() << " mismatches in " << check.compared
          << " values compared at tolerance " << table_tolerance(config.table_id) << " against " << config.golden
          << '\n';
      if (check.mismatched) return ExitCode::error;
    }
    return e.partial ? ExitCode::partial : ExitCode::ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::error;
  }
}

}  // namespace frobenius::app
