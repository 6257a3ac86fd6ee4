#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "polykernel/errors.hpp"

// Exact-rational scalar used by the golden-table backend. Every double is a
// dyadic rational, so conversion from user-supplied parameters (alpha, atom
// data) is exact; the only rounding in an exact-backend pipeline happens in
// the final conversion of results back to double.

namespace polykernel {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw ParameterError("rational_from_double: non-finite value");
  }
  return Rational(x);  // exact: doubles are dyadic rationals
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q" in lowest terms, "p" when the denominator is 1. Used by the CLI
// moments export.
inline std::string to_fraction_string(const Rational& r) {
  std::string num = numerator(r).str();
  BigInt den = denominator(r);
  if (den == 1) return num;
  return num + "/" + den.str();
}

}  // namespace polykernel
