#include "frobenius/real.hpp"

#include "frobenius/errors.hpp"

#include <iomanip>
#include <sstream>

namespace frobenius {

unsigned working_digits() { return Real::default_precision(); }

WorkingPrecision::WorkingPrecision(unsigned digits) : previous_(Real::default_precision()) {
  if (digits < 10) throw ConfigError("working precision must be at least 10 digits");
  Real::default_precision(digits);
}

WorkingPrecision::~WorkingPrecision() { Real::default_precision(previous_); }

Real parse_real(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "+inf" || s == "infinity") return infinity();
  if (s == "-inf") return -infinity();
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw ConfigError("not a real number: '" + s + "'");
  }
}

std::string format_fixed(const Real& value, int decimals) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  Real v = value;
  // Suppress "-0.000" for values that round to zero.
  if (abs(v) < ten_to_minus(decimals) / 2) v = 0;
  out << std::fixed << std::setprecision(decimals) << v;
  return out.str();
}

std::string format_full(const Real& value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(static_cast<int>(working_digits())) << value;
  return out.str();
}

Real ten_to_minus(int digits) { return pow(Real(10), -digits); }

Real infinity() { return std::numeric_limits<Real>::infinity(); }

}  // namespace frobenius
