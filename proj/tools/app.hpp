#pragma once

#include "frobenius/confined.hpp"
#include "frobenius/unconfined.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobenius::app {

/// Rows of already formatted cells. CSV form: `#` comment lines, a header row,
/// then data rows.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;  // ConfigError if absent
};

void write_csv(const Table& table, std::ostream& out);
void write_aligned(const Table& table, std::ostream& out);
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);

enum class Mode {
  confined,
  sweep,
  unconfined,
  zsweep,
  crossing,
  wavefunction,
  oracle,
  tables,
  lambda_scan,
};

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

struct RunConfig {
  Mode mode = Mode::confined;
  std::string potential = "harmonic";
  std::map<std::string, std::string> params;
  std::vector<int> ls{0};
  int dimension = 3;
  int states = 1;
  std::vector<int> state_list;  // unconfined: explicit k values
  std::vector<std::string> radii;
  std::string dR = "0.5";
  std::optional<std::string> R0_override;
  unsigned digits = kDefaultDigits;
  int K_start = 40;
  int K_max = 400;
  std::string tol = "1e-10";
  int decimals = -1;  // -1: per-mode default
  int jobs = 1;
  std::string output;
  // zsweep and crossing
  int J = 2;
  std::string z_range = "-15:25:0.5";
  std::string state_a = "1,0";
  std::string state_b = "0,3";
  std::string z_window = "-3.8:-3.7";
  // wavefunction
  std::string lambda;
  std::string r_range = "0:5:0.1";
  // oracle
  double r_max = 10;
  int points = 2000;
  // lambda_scan
  std::string window = "0:12";
  int samples = 241;
  int K = 120;
  // tables
  std::string table_id;
  std::string golden;

  /// Field-level checks against the selected potential and mode.
  void validate() const;
};

enum ExitCode : int { ok = 0, error = 1, partial = 2 };

/// Executes one configuration. The aligned table goes to `out`, the CSV to
/// config.output when set (or `out` when it is "-").
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "a:b:step" or comma-separated list.
std::vector<Real> parse_grid(const std::string& text);
StateLabel parse_label(const std::string& text);

struct ScanSample {
  Real lambda;
  Real u;
  Real du;
  int interval = -1;  // k when lambda lies inside (lambda'_k, lambda_k)
};

struct LambdaScan {
  std::vector<ScanSample> samples;
  InterleavedRoots roots;
};

/// u(R, lambda) and u'(R, lambda) sampled on a uniform grid of `samples`
/// points over the window, with the bounding intervals located by the root
/// scan. An empty window yields no samples.
LambdaScan lambda_scan(const PotentialSpec& potential, const Real& l, const Real& R,
                       const Window& window, int samples, int K,
                       const ScanOptions& scan = {});
Table lambda_scan_table(const LambdaScan& scan, int decimals);

struct TableCheck {
  std::size_t compared = 0;
  std::size_t mismatched = 0;
  double max_error = 0;
  std::vector<std::string> failures;  // one line per mismatched row
};

/// Recomputes a published table ("table1" .. "table6") in the column layout
/// of the golden files. decimals < 0 uses the published number of places.
Table reproduce_table(const std::string& id, int jobs = 1, int decimals = -1);
double table_tolerance(const std::string& id);
int table_decimals(const std::string& id);

/// Rows are matched by their key columns (everything before the first value
/// column); values are compared numerically.
TableCheck compare_tables(const Table& computed, const Table& golden,
                          const std::vector<std::string>& value_columns, double tolerance);
std::vector<std::string> table_value_columns(const std::string& id);

}  // namespace frobenius::app
