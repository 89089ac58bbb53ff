#pragma once

#include "frobenius/real.hpp"

#include <string>

namespace testing {

using frobenius::Real;

inline double d(const Real& x) { return frobenius::to_double(x); }
inline Real R(const char* text) { return frobenius::parse_real(text); }

// |a - b| <= tol, evaluated in working precision.
inline bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }
inline bool near(const Real& a, const char* b, const char* tol) { return near(a, R(b), R(tol)); }

}  // namespace testing
