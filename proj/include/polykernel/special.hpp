#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "polykernel/errors.hpp"

// Small helpers around the log-Gamma function. Everything downstream that
// multiplies factorial-like quantities goes through these so that ratios such
// as Gamma(d+1)Gamma(a+1)/Gamma(d+a+2) stay representable for d in the
// hundreds where the individual Gamma values overflow.

namespace polykernel {

using Complex = std::complex<double>;

// log |Gamma(x)| with the sign of Gamma(x) reported separately. x may be any
// non-pole real; poles (x a non-positive integer) raise ParameterError.
inline double log_abs_gamma(double x, int& sign) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw ParameterError("log_abs_gamma: pole at non-positive integer " +
                         std::to_string(x));
  }
  int s = 0;
  double v = ::lgamma_r(x, &s);
  sign = s;
  return v;
}

inline double log_gamma(double x) {
  int sign = 0;
  double v = log_abs_gamma(x, sign);
  if (sign < 0) {
    throw ParameterError("log_gamma: Gamma(" + std::to_string(x) +
                         ") is negative");
  }
  return v;
}

// Gamma(a) / Gamma(b) for positive arguments, computed in log space.
inline double gamma_ratio(double a, double b) {
  return std::exp(log_gamma(a) - log_gamma(b));
}

// Generalized binomial coefficient C(a, b) = Gamma(a+1) / (Gamma(b+1) *
// Gamma(a-b+1)). Sign tracked so slightly negative arguments in (-1, 0)
// still work.
inline double binomial(double a, double b) {
  int sa = 0, sb = 0, sc = 0;
  double v = log_abs_gamma(a + 1.0, sa) - log_abs_gamma(b + 1.0, sb) -
             log_abs_gamma(a - b + 1.0, sc);
  return sa * sb * sc * std::exp(v);
}

// Integer power of a complex number by repeated squaring; avoids the
// principal-branch detour of std::pow(complex, double) when the exponent is
// an exact integer.
inline Complex ipow(Complex z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

}  // namespace polykernel
