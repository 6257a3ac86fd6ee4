#pragma once

#include <cmath>
#include <complex>

#include "polykernel/errors.hpp"
#include "polykernel/special.hpp"

// Closed-form counterparts of the series kernels for the two built-in weight
// families, plus the classical-polynomial identities used to cross-validate
// them. Coefficients always go through log-Gamma, never factorial tables.

namespace polykernel {

struct JacobiParams {
  double a = 0.0;  // > -1
  double b = 0.0;  // > -1
  int n = 0;       // >= 0

  JacobiParams(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
    if (!(a > -1.0) || !(b > -1.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw ParameterError("JacobiParams: parameters must be finite and > -1");
    }
    if (n < 0) throw ParameterError("JacobiParams: degree must be >= 0");
  }
};

struct LaguerreParams {
  double beta = 0.0;  // any finite real; the value is polynomial in beta
  int n = 0;          // >= 0

  LaguerreParams(double beta_, int n_) : beta(beta_), n(n_) {
    if (!std::isfinite(beta)) {
      throw ParameterError("LaguerreParams: beta must be finite");
    }
    if (n < 0) throw ParameterError("LaguerreParams: degree must be >= 0");
  }
};

// P_n^{(a,b)} evaluated at 1-2x, by the classical three-term recurrence in
// u = 1-2x. Forward recursion is stable on the orthogonality interval; the
// explicit hypergeometric expansion, which serves as the independent oracle
// in the tests, loses ~1e-9 to cancellation near x = 1 already at n = 8.
inline double jacobi_eval(const JacobiParams& p, double x) {
  if (p.n == 0) return 1.0;
  const double u = 1.0 - 2.0 * x;
  const double a = p.a;
  const double b = p.b;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * u;
  for (int k = 2; k <= p.n; ++k) {
    const double c = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double c2 = (c - 1.0) * (a * a - b * b);
    const double c3 = (c - 2.0) * (c - 1.0) * c;
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = ((c2 + c3 * u) * cur - c4 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Squared L^2 norm of P_n^{(a,d)}(2x-1) for the weight x^d (1-x)^a on [0,1]:
//   h_n = Gamma(a+n+1) Gamma(d+n+1) / (n! Gamma(a+d+n+1) (a+d+2n+1)).
// The n! is sometimes dropped in the literature; without it the constant is
// only correct for n <= 1. The quadrature oracle in the tests pins this form.
inline double jacobi_norm(double a, double d, int n) {
  if (!(a > -1.0) || !(d > -1.0)) {
    throw ParameterError("jacobi_norm: parameters must be > -1");
  }
  if (n < 0) throw ParameterError("jacobi_norm: degree must be >= 0");
  int sd = 0;
  const double log_h = log_gamma(a + n + 1.0) + log_gamma(d + n + 1.0) -
                       log_gamma(n + 1.0) - log_abs_gamma(a + d + n + 1.0, sd);
  return sd * std::exp(log_h) / (a + d + 2.0 * n + 1.0);
}

// Generalized Laguerre L_n^{(beta)}(x) by the ascending three-term recurrence
//   (k+1) L_{k+1} = (2k+1+beta-x) L_k - (k+beta) L_{k-1}.
inline double laguerre_eval(const LaguerreParams& p, double x) {
  if (!std::isfinite(x)) throw ParameterError("laguerre_eval: non-finite x");
  if (p.n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + p.beta - x;
  for (int k = 1; k < p.n; ++k) {
    const double next =
        ((2.0 * k + 1.0 + p.beta - x) * cur - (k + p.beta) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Reproducing kernel of the order-q polyanalytic space over the unit disc
// with weight (1-|z|^2)^alpha dA/pi:
//   K(z,w) = q (1-conj(z)w)^{q-1} / (1-z conj(w))^{alpha+q+1}
//            * sum_{j<q} (-1)^j C(q-1,j) C(alpha+q+j, alpha+q-1)
//                        |z-w|^{2j} / |1-z conj(w)|^{2j}.
// The overall constant is q, not q C(alpha+q-1, alpha): the larger constant
// sometimes quoted traces back to a Jacobi norm h_n missing a factor n!, and
// fails the reproducing property for alpha != 0. The constant used here is
// fixed by K(0,0) = sum_{n<q} (2n+alpha+1) = q(q+alpha), which this formula's
// j=0 term reproduces. Principal branch for the fractional power;
// Re(1-z conj w) > 0 on the bidisc so the branch cut is never approached.
inline Complex bergman_kernel(double alpha, int q, Complex z, Complex w) {
  if (!(alpha > -1.0)) throw ParameterError("bergman_kernel: alpha must be > -1");
  if (q < 1) throw ParameterError("bergman_kernel: order q must be >= 1");
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0) {
    throw DomainError("bergman_kernel: points must lie in the open unit disc");
  }
  const Complex u = 1.0 - z * std::conj(w);
  const double t = std::norm(z - w) / std::norm(u);

  double sum = 0.0;
  for (int j = 0; j < q; ++j) {
    const double c = binomial(q - 1.0, j) * binomial(alpha + q + j, alpha + q - 1.0);
    sum += ((j % 2 == 0) ? 1.0 : -1.0) * c * std::pow(t, j);
  }
  const Complex head = ipow(std::conj(u), q - 1) *
                       std::pow(u, -(alpha + q + 1.0));
  return static_cast<double>(q) * head * sum;
}

// Closed kernel for the plane with weight |z|^{2 alpha} e^{-|z|^2}/Gamma(alpha+1):
//   K(z,w) = e^{z conj(w)} L_{q-1}^{(alpha+1)}(|z-w|^2).
// Exact for alpha = 0; for alpha != 0 the comparison against the series is
// informational only (the formula ignores the |z|^{2 alpha} factor already at
// q = 1), which is why verification treats that configuration as report-only.
inline Complex fock_kernel(double alpha, int q, Complex z, Complex w) {
  if (!(alpha > -1.0)) throw ParameterError("fock_kernel: alpha must be > -1");
  if (q < 1) throw ParameterError("fock_kernel: order q must be >= 1");
  return std::exp(z * std::conj(w)) *
         laguerre_eval(LaguerreParams(alpha + 1.0, q - 1), std::norm(z - w));
}

// Disc automorphism phi_c(z) = (z - c)/(1 - z conj(c)).
struct MobiusMap {
  Complex center{0.0, 0.0};

  explicit MobiusMap(Complex c) : center(c) {
    if (std::abs(c) >= 1.0) {
      throw ParameterError("MobiusMap: center must lie in the open unit disc");
    }
  }
};

inline Complex mobius_apply(const MobiusMap& m, Complex z) {
  return (z - m.center) / (1.0 - z * std::conj(m.center));
}

inline Complex mobius_derivative(const MobiusMap& m, Complex z) {
  const Complex den = 1.0 - z * std::conj(m.center);
  return (1.0 - std::norm(m.center)) / (den * den);
}

// Transformation rule of the disc kernel under phi = phi_c:
//   K(z,xi) = (phi'(z) conj(phi'(xi)))^{(alpha+q+1)/2}
//             / (conj(phi'(z)) phi'(xi))^{(q-1)/2} * K(phi(z), phi(xi)).
// The half-integer powers use the principal log of each phi' factor
// separately: arg(phi') = -2 arg(1 - z conj c) stays in (-pi, pi), the
// combined factor is continuous on the bidisc and positive real at z == xi,
// which pins the branch. Returns the relative deviation of the two sides.
inline double covariance_residual(double alpha, int q, const MobiusMap& m,
                                  Complex z, Complex xi) {
  const Complex lhs = bergman_kernel(alpha, q, z, xi);
  const Complex log_dz = std::log(mobius_derivative(m, z));
  const Complex log_dxi = std::log(mobius_derivative(m, xi));
  const double s1 = 0.5 * (alpha + q + 1.0);
  const double s2 = 0.5 * (q - 1.0);
  const Complex factor = std::exp(s1 * (log_dz + std::conj(log_dxi)) -
                                  s2 * (std::conj(log_dz) + log_dxi));
  const Complex rhs =
      factor * bergman_kernel(alpha, q, mobius_apply(m, z), mobius_apply(m, xi));
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

// Product formula turning a Laguerre product into a single-argument sum:
//   L_n^b(x) L_n^b(y) = Gamma(b+n+1)/n! * sum_{l<=n} (xy)^{n-l}
//                       L_l^{(b+2(n-l))}(x+y) / ((n-l)! Gamma(b+n+1-l)).
// Returns |lhs - rhs| / (1 + |lhs|).
inline double bailey_identity_check(double beta, int n, double x, double y) {
  if (n < 0) throw ParameterError("bailey_identity_check: n must be >= 0");
  const double lhs = laguerre_eval(LaguerreParams(beta, n), x) *
                     laguerre_eval(LaguerreParams(beta, n), y);
  double rhs = 0.0;
  for (int l = 0; l <= n; ++l) {
    const double log_c = log_gamma(beta + n + 1.0) - log_gamma(n + 1.0) -
                         log_gamma(n - l + 1.0) - log_gamma(beta + n + 1.0 - l);
    rhs += std::exp(log_c) * std::pow(x * y, n - l) *
           laguerre_eval(LaguerreParams(beta + 2.0 * (n - l), l), x + y);
  }
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

// Argument-shift identity L_n^b(x-y) = sum_{r<=n} y^r/r! L_{n-r}^{(b+r)}(x),
// reported as a scaled residual.
inline double laguerre_shift_check(double beta, int n, double x, double y) {
  if (n < 0) throw ParameterError("laguerre_shift_check: n must be >= 0");
  const double lhs = laguerre_eval(LaguerreParams(beta, n), x - y);
  double rhs = 0.0;
  double y_pow_over_fact = 1.0;
  for (int r = 0; r <= n; ++r) {
    if (r > 0) y_pow_over_fact *= y / r;
    rhs += y_pow_over_fact * laguerre_eval(LaguerreParams(beta + r, n - r), x);
  }
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

// Exponential form of the same shift, L_n^b(x-y) = e^{-y} sum_{r>=0} y^r/r!
// L_n^{(b+r)}(x); the series is truncated once the terms are negligible.
inline double laguerre_exp_shift_check(double beta, int n, double x, double y) {
  if (n < 0) throw ParameterError("laguerre_exp_shift_check: n must be >= 0");
  const double lhs = laguerre_eval(LaguerreParams(beta, n), x - y);
  double acc = 0.0;
  double y_pow_over_fact = 1.0;
  int small_run = 0;
  for (int r = 0; r < 600; ++r) {
    if (r > 0) y_pow_over_fact *= y / r;
    const double term =
        y_pow_over_fact * laguerre_eval(LaguerreParams(beta + r, n), x);
    acc += term;
    if (std::abs(term) <= 1e-18 * (1.0 + std::abs(acc))) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  const double rhs = std::exp(-y) * acc;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace polykernel
