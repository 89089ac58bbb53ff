#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace frobenius {

/// Configurable-precision real used for every series accumulation and root
/// refinement. New values pick up the current working precision.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

/// Current working precision in decimal digits.
unsigned working_digits();

/// RAII override of the working precision. The setting is process-wide, so
/// install it before fanning out worker threads.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  unsigned previous_;
};

/// Parses a decimal literal at the working precision ("inf" allowed).
Real parse_real(std::string_view text);

/// Fixed-point rendering with `decimals` places, locale independent.
std::string format_fixed(const Real& value, int decimals);

/// Shortest rendering that round-trips at the working precision.
std::string format_full(const Real& value);

inline double to_double(const Real& value) { return value.convert_to<double>(); }

/// 10^(-digits) at the working precision.
Real ten_to_minus(int digits);

Real infinity();

}  // namespace frobenius
