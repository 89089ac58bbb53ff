#pragma once

#include "frobenius/potentials.hpp"

#include <vector>

namespace testing {

namespace mp = boost::multiprecision;

// Taylor coefficients c_n of x / (e^x - 1) by power-series division:
// sum_{k<=n} c_k / (n-k+1)! = [n == 0].
inline std::vector<frobenius::Rational> bernoulli_generating(int count) {
  using frobenius::Rational;
  std::vector<Rational> inv_factorial(count + 2);
  mp::cpp_int f = 1;
  for (int k = 0; k < count + 2; ++k) {
    if (k > 0) f *= k;
    inv_factorial[k] = Rational(1, f);
  }
  std::vector<Rational> c(count + 1);
  for (int n = 0; n <= count; ++n) {
    Rational acc = n == 0 ? 1 : 0;
    for (int k = 0; k < n; ++k) acc -= c[k] * inv_factorial[n - k + 1];
    c[n] = acc / inv_factorial[1];
  }
  return c;
}

inline mp::cpp_int factorial(int n) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// |B_2n| from the generating function.
inline frobenius::Rational bernoulli_magnitude(int n) {
  frobenius::Rational b = bernoulli_generating(2 * n)[2 * n] * frobenius::Rational(factorial(2 * n));
  return b < 0 ? frobenius::Rational(-b) : b;
}

}  // namespace testing
