#pragma once

// Reference implementations used only by the tests. Each oracle reaches its
// value by a different route than the library code it is checking: direct
// numerical integration for moments and norms, the explicit hypergeometric
// sum for Jacobi (the library runs the recurrence), the explicit sum for
// Laguerre (likewise), classical-polynomial formulas for the Christoffel
// kernels, and Hankel determinant ratios for the orthonormal polynomials of
// a discrete measure.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include <polykernel/measures.hpp>

namespace oracles {

// 10-point Gauss-Legendre on [a, b], exact through degree 19. Five points
// were not enough: moment integrands reach degree 2d+2 on a single panel and
// the graded panels near a fractional-power endpoint then converge like
// rho^{-2n} with rho ~ 7.6, which stalls around 1e-9 for n = 5.
inline double gl10(const std::function<double(double)>& f, double a, double b) {
  static const double xs[5] = {0.1488743389816312, 0.4333953941292472,
                               0.6794095682990244, 0.8650633666889845,
                               0.9739065285171717};
  static const double ws[5] = {0.2955242247147529, 0.2692667193099963,
                               0.2190863625159820, 0.1494513491505806,
                               0.0666713443086881};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) {
    acc += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
  }
  return half * acc;
}

// integral of f over (0,1) with panels accumulating geometrically at both
// endpoints, so integrable endpoint singularities of the x^d (1-x)^a kind are
// resolved to near machine precision
inline double unit_integral(const std::function<double(double)>& f) {
  std::vector<double> cuts;
  for (double t = 1e-16; t < 0.5; t *= 1.7) cuts.push_back(t);
  cuts.push_back(0.5);
  for (std::size_t k = cuts.size() - 1; k-- > 0;) cuts.push_back(1.0 - cuts[k]);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    acc += gl10(f, cuts[k], cuts[k + 1]);
  }
  return acc;
}

// integral_0^1 g(t) (1-t)^alpha dt
inline double bergman_integral(double alpha,
                               const std::function<double(double)>& g) {
  return unit_integral(
      [&](double t) { return g(t) * std::pow(1.0 - t, alpha); });
}

// integral_0^inf g(t) t^alpha e^{-t} dt / Gamma(alpha+1), truncated at t = 120
inline double fock_integral(double alpha,
                            const std::function<double(double)>& g) {
  std::vector<double> cuts;
  for (double t = 1e-16; t < 1.0; t *= 1.6) cuts.push_back(t);
  for (double t = 1.0; t <= 120.0; t += 0.5) cuts.push_back(t);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    acc += gl10([&](double t) { return g(t) * std::pow(t, alpha) * std::exp(-t); },
               cuts[k], cuts[k + 1]);
  }
  return acc / std::exp(std::lgamma(alpha + 1.0));
}

// P_n^{(a,b)}(u) by the classical three-term recurrence
inline double jacobi_recurrence(double a, double b, int n, double u) {
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * u;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = ((a2 + a3 * u) * p - a4 * pm1) / a1;
    pm1 = p;
    p = next;
  }
  return p;
}

// P_n^{(a,b)}(1-2x) by the explicit expansion in powers of x:
//   Gamma(n+a+1)/(n! Gamma(n+a+b+1))
//     * sum_j (-1)^j C(n,j) Gamma(n+j+a+b+1)/Gamma(j+a+1) x^j.
// The alternating sum cancels heavily toward x = 1 (condition ~1e7 by n = 8),
// so comparisons against it need a correspondingly loose tolerance.
inline double jacobi_sum(double a, double b, int n, double x) {
  if (n == 0) return 1.0;
  const double log_pref = std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) -
                          std::lgamma(n + a + b + 1.0);
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                         std::lgamma(n - j + 1.0) +
                         std::lgamma(n + j + a + b + 1.0) -
                         std::lgamma(j + a + 1.0);
    acc += (j % 2 ? -1.0 : 1.0) * std::exp(log_c) * std::pow(x, j);
  }
  return std::exp(log_pref) * acc;
}

// generalized binomial C(p, k) for integer k >= 0, via Gamma ratios
inline double binom(double p, int k) {
  double acc = 1.0;
  for (int j = 1; j <= k; ++j) acc *= (p - k + j) / j;
  return acc;
}

// L_n^{(beta)}(x) by the explicit sum over powers
inline double laguerre_sum(double beta, int n, double x) {
  double acc = 0.0;
  double xk = 1.0;
  double kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      xk *= x;
      kfact *= k;
    }
    acc += (k % 2 ? -1.0 : 1.0) * binom(n + beta, n - k) * xk / kfact;
  }
  return acc;
}

// Christoffel kernel Q_{d,n}(x,y) of the shifted Bergman weight t^d (1-t)^alpha
// on [0,1], via classical Jacobi data: the orthonormal polynomials are
// P_k^{(alpha,d)}(2t-1)/sqrt(h_k) with
//   h_k = Gamma(k+alpha+1) Gamma(k+d+1) / (k! Gamma(k+alpha+d+1) (2k+alpha+d+1)).
inline double bergman_Q(double alpha, int d, int n, double x, double y) {
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double log_h = std::lgamma(k + alpha + 1.0) + std::lgamma(k + d + 1.0)
                         - std::lgamma(k + 1.0)
                         - std::lgamma(k + alpha + d + 1.0)
                         - std::log(2.0 * k + alpha + d + 1.0);
    acc += jacobi_recurrence(alpha, d, k, 2.0 * x - 1.0) *
           jacobi_recurrence(alpha, d, k, 2.0 * y - 1.0) / std::exp(log_h);
  }
  return acc;
}

// Christoffel kernel Q_{d,n}(x,y) of the shifted Fock weight
// t^{d+alpha} e^{-t}/Gamma(alpha+1), via Laguerre data: orthonormal
// polynomials are L_k^{(d+alpha)}(t) scaled by
//   1/sqrt(h_k), h_k = Gamma(k+d+alpha+1) / (k! Gamma(alpha+1)).
inline double fock_Q(double alpha, int d, int n, double x, double y) {
  const double beta = d + alpha;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double log_h = std::lgamma(k + beta + 1.0) - std::lgamma(k + 1.0) -
                         std::lgamma(alpha + 1.0);
    acc += laguerre_sum(beta, k, x) * laguerre_sum(beta, k, y) /
           std::exp(log_h);
  }
  return acc;
}

// Orthonormal polynomial of the shifted measure x^d dmu through Hankel
// determinant ratios: p_n(x) = D_n(x) / sqrt(Dtilde_{n-1} Dtilde_n), where
// Dtilde_k = det [s_{d+i+j}]_{i,j<=k} and D_n(x) replaces the last row by the
// powers of x. Dtilde_{-1} = 1.
inline double hankel_orthonormal(const polykernel::MeasureSpec& s, int d, int n,
                                 double x) {
  auto hankel_det = [&](int k) {
    if (k < 0) return 1.0;
    Eigen::MatrixXd M(k + 1, k + 1);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) M(i, j) = s.moment(d + i + j);
    return M.determinant();
  };
  Eigen::MatrixXd D(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) D(i, j) = s.moment(d + i + j);
  double xj = 1.0;
  for (int j = 0; j <= n; ++j) {
    D(n, j) = xj;
    xj *= x;
  }
  return D.determinant() / std::sqrt(hankel_det(n - 1) * hankel_det(n));
}

}  // namespace oracles
