#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "polykernel/errors.hpp"
#include "polykernel/measures.hpp"
#include "polykernel/rational.hpp"

// Orthonormal polynomials P_{d,0..n} of the shifted radial measure x^d dmu,
// built by factorizing the normalized moment matrix M_ij = s_{d+i+j}/s_d.
// Normalizing by s_d keeps the matrix O(1)-scaled for large shifts; the final
// 1/sqrt(s_d) rescale is carried as a log-space factor so downstream series
// code can combine it with lambda^d without overflow.

namespace polykernel {
namespace detail {

template <typename Scalar>
struct MonicBasis {
  // row k = coefficients of the monic degree-k orthogonal polynomial
  // (constant term first, leading coefficient == 1)
  std::vector<std::vector<Scalar>> coeffs;
  // h_k = <pi_k, pi_k> with respect to the normalized measure
  std::vector<Scalar> norms;
};

// LDL^T of the (n+1)x(n+1) Hankel matrix M_ij = m(i+j), then rows of L^{-1}
// as the monic coefficients and the pivots as the squared norms. In exact
// arithmetic a non-positive pivot means the measure has too few support
// points; in floating point it means the factorization lost definiteness.
template <typename Scalar, typename MomentFn>
MonicBasis<Scalar> monic_orthogonalize(MomentFn m, int n) {
  const int size = n + 1;
  std::vector<Scalar> cache(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) cache[k] = m(k);

  std::vector<std::vector<Scalar>> L(size);
  std::vector<Scalar> D(size);
  for (int i = 0; i < size; ++i) {
    L[i].assign(i + 1, Scalar(0));
    L[i][i] = Scalar(1);
    for (int j = 0; j < i; ++j) {
      Scalar acc = cache[i + j];
      for (int k = 0; k < j; ++k) acc -= L[i][k] * L[j][k] * D[k];
      L[i][j] = acc / D[j];
    }
    Scalar diag = cache[2 * i];
    for (int k = 0; k < i; ++k) diag -= L[i][k] * L[i][k] * D[k];
    if (diag <= Scalar(0)) {
      if constexpr (std::is_same_v<Scalar, double>) {
        throw ConditioningError(
            "moment matrix lost positive definiteness at degree " +
                std::to_string(i),
            std::numeric_limits<double>::infinity());
      } else {
        throw RankError("moment matrix is singular at degree " +
                        std::to_string(i) +
                        "; the measure has too few support points");
      }
    }
    D[i] = diag;
  }

  // forward substitution for the rows of L^{-1}
  MonicBasis<Scalar> out;
  out.coeffs.resize(size);
  out.norms = std::move(D);
  for (int k = 0; k < size; ++k) {
    std::vector<Scalar>& row = out.coeffs[k];
    row.assign(k + 1, Scalar(0));
    row[k] = Scalar(1);
    for (int j = k - 1; j >= 0; --j) {
      Scalar acc = Scalar(0);
      for (int i = j + 1; i <= k; ++i) acc += L[i][j] * row[i];
      row[j] = -acc;
    }
  }
  return out;
}

// Three-term recurrence pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1} read off the
// monic basis: a_k is a difference of subleading coefficients, b_k a ratio of
// squared norms. Used to assemble Jacobi matrices for quadrature.
struct Recurrence {
  std::vector<double> a;  // a_0 .. a_{n-1}
  std::vector<double> b;  // b_0 (= h_0) .. b_{n-1}
};

template <typename Scalar>
Recurrence recurrence_from_monic(const MonicBasis<Scalar>& basis) {
  const int n = static_cast<int>(basis.norms.size()) - 1;
  Recurrence rec;
  rec.a.resize(n);
  rec.b.resize(n);
  for (int k = 0; k < n; ++k) {
    Scalar ck = k > 0 ? basis.coeffs[k][k - 1] : Scalar(0);
    Scalar ck1 = basis.coeffs[k + 1][k];
    if constexpr (std::is_same_v<Scalar, double>) {
      rec.a[k] = ck - ck1;
      rec.b[k] = k > 0 ? basis.norms[k] / basis.norms[k - 1] : basis.norms[0];
    } else {
      rec.a[k] = to_double(Scalar(ck - ck1));
      rec.b[k] = k > 0 ? to_double(Scalar(basis.norms[k] / basis.norms[k - 1]))
                       : to_double(basis.norms[0]);
    }
  }
  return rec;
}

// Orthonormal-recurrence data for evaluation:
//   sqrt(b_{k+1}) phat_{k+1} = (x - a_k) phat_k - sqrt(b_k) phat_{k-1},
// phat_0 = 1 (the normalized measure has unit mass). Same monic read-off as
// recurrence_from_monic, except evaluation up to degree n needs the norm
// ratio b_n as well. Exact-scalar differences are formed before converting
// to double; the subleading monic coefficients cancel heavily on their own.
template <typename Scalar>
void eval_recurrence(const MonicBasis<Scalar>& basis, std::vector<double>& a,
                     std::vector<double>& sqrt_b) {
  const int n = static_cast<int>(basis.norms.size()) - 1;
  a.assign(n, 0.0);
  sqrt_b.assign(n + 1, 0.0);
  for (int k = 0; k < n; ++k) {
    Scalar ck = k > 0 ? basis.coeffs[k][k - 1] : Scalar(0);
    Scalar ck1 = basis.coeffs[k + 1][k];
    Scalar ratio = basis.norms[k + 1] / basis.norms[k];
    if constexpr (std::is_same_v<Scalar, double>) {
      a[k] = ck - ck1;
      sqrt_b[k + 1] = std::sqrt(ratio);
    } else {
      a[k] = to_double(Scalar(ck - ck1));
      sqrt_b[k + 1] = std::sqrt(to_double(ratio));
    }
  }
}

inline double condition_estimate(const std::vector<double>& moments, int n) {
  Eigen::MatrixXd M(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) M(i, j) = moments[i + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

constexpr double kConditionLimit = 1e12;

}  // namespace detail

class OrthoBasis {
 public:
  OrthoBasis(int d, int n, std::vector<std::vector<double>> normalized_coeffs,
             std::vector<double> rec_a, std::vector<double> rec_sqrt_b,
             double log_scale, double cond, bool exact)
      : d_(d),
        n_(n),
        coeffs_(std::move(normalized_coeffs)),
        rec_a_(std::move(rec_a)),
        rec_sqrt_b_(std::move(rec_sqrt_b)),
        log_scale_(log_scale),
        scale_(std::exp(log_scale)),
        cond_(cond),
        exact_(exact) {}

  int shift() const { return d_; }
  int degree() const { return n_; }
  double cond_estimate() const { return cond_; }
  bool exact_arithmetic() const { return exact_; }

  // ln of the uniform rescale applied to the normalized-measure basis; equals
  // -0.5 * ln s_d. P_{d,k} = exp(log_scale) * (normalized basis polynomial).
  double log_scale() const { return log_scale_; }

  // coefficient of x^j in P_{d,k}
  double coefficient(int k, int j) const {
    check_k(k);
    if (j < 0 || j > k) {
      throw ParameterError("OrthoBasis::coefficient: power out of range");
    }
    return scale_ * coeffs_[k][j];
  }

  double eval(int k, double x) const { return scale_ * eval_normalized(k, x); }

  // Value of the orthonormal polynomial of the *normalized* measure
  // x^d dmu / s_d, i.e. sqrt(s_d) * P_{d,k}(x). Runs the three-term
  // recurrence rather than Horner on coeffs_: deep shifts of the disc weight
  // have monomial coefficients near 1e9 for O(1) values, so the coefficient
  // route cancels down to ~1e-9 while the recurrence stays at a few ulps.
  double eval_normalized(int k, double x) const {
    check_k(k);
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < k; ++j) {
      const double next =
          ((x - rec_a_[j]) * cur - rec_sqrt_b_[j] * prev) / rec_sqrt_b_[j + 1];
      prev = cur;
      cur = next;
    }
    return cur;
  }

  // Christoffel sum of the normalized basis: s_d * Q_{d,n}(x,y). One shared
  // recurrence pass instead of n_+1 eval_normalized calls; this is the inner
  // loop of the kernel series.
  double christoffel_normalized(double x, double y) const {
    double acc = 1.0;
    double px_prev = 0.0, px = 1.0;
    double py_prev = 0.0, py = 1.0;
    for (int j = 0; j < n_; ++j) {
      const double nx =
          ((x - rec_a_[j]) * px - rec_sqrt_b_[j] * px_prev) / rec_sqrt_b_[j + 1];
      const double ny =
          ((y - rec_a_[j]) * py - rec_sqrt_b_[j] * py_prev) / rec_sqrt_b_[j + 1];
      px_prev = px;
      px = nx;
      py_prev = py;
      py = ny;
      acc += px * py;
    }
    return acc;
  }

 private:
  void check_k(int k) const {
    if (k < 0 || k > n_) {
      throw ParameterError("OrthoBasis: polynomial index out of range");
    }
  }

  int d_ = 0;
  int n_ = 0;
  std::vector<std::vector<double>> coeffs_;
  std::vector<double> rec_a_;       // a_0 .. a_{n-1}
  std::vector<double> rec_sqrt_b_;  // sqrt(b_k), k = 0..n; [0] unused
  double log_scale_ = 0.0;
  double scale_ = 1.0;
  double cond_ = 1.0;
  bool exact_ = false;
};

// Factorize the normalized moment matrix of x^d dmu and return the
// orthonormal basis P_{d,0..n} (leading coefficients positive). Uses exact
// rational arithmetic whenever the measure provides exact moments; the float
// path guards itself with a condition-number threshold of 1e12.
inline OrthoBasis build_basis(const MeasureSpec& s, int d, int n) {
  if (d < 0 || n < 0) {
    throw ParameterError("build_basis: d and n must be >= 0");
  }

  const double log_sd = s.log_moment(d);
  std::vector<double> float_moments(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k) {
    float_moments[k] = std::exp(s.log_moment(d + k) - log_sd);
  }
  const double cond = detail::condition_estimate(float_moments, n);

  std::vector<std::vector<double>> rows(n + 1);
  std::vector<double> rec_a;
  std::vector<double> rec_sqrt_b;
  bool exact = s.has_exact_moments();
  if (exact) {
    Rational sd = *s.exact_moment(d);
    auto mfn = [&](int k) { return Rational(*s.exact_moment(d + k) / sd); };
    detail::MonicBasis<Rational> monic =
        detail::monic_orthogonalize<Rational>(mfn, n);
    for (int k = 0; k <= n; ++k) {
      double inv_norm = 1.0 / std::sqrt(to_double(monic.norms[k]));
      rows[k].resize(k + 1);
      for (int j = 0; j <= k; ++j) {
        rows[k][j] = to_double(monic.coeffs[k][j]) * inv_norm;
      }
    }
    detail::eval_recurrence(monic, rec_a, rec_sqrt_b);
  } else {
    if (cond > detail::kConditionLimit) {
      throw ConditioningError(
          "normalized moment matrix condition " + std::to_string(cond) +
          " exceeds 1e12 (d=" + std::to_string(d) + ", n=" + std::to_string(n) +
          ")",
          cond);
    }
    auto mfn = [&](int k) { return float_moments[k]; };
    detail::MonicBasis<double> monic =
        detail::monic_orthogonalize<double>(mfn, n);
    for (int k = 0; k <= n; ++k) {
      double inv_norm = 1.0 / std::sqrt(monic.norms[k]);
      rows[k].resize(k + 1);
      for (int j = 0; j <= k; ++j) rows[k][j] = monic.coeffs[k][j] * inv_norm;
    }
    detail::eval_recurrence(monic, rec_a, rec_sqrt_b);
  }

  return OrthoBasis(d, n, std::move(rows), std::move(rec_a),
                    std::move(rec_sqrt_b), -0.5 * log_sd, cond, exact);
}

inline double eval_P(const OrthoBasis& basis, int k, double x) {
  return basis.eval(k, x);
}

// Christoffel kernel Q_{d,n}(x,y) = sum_{k<=n} P_{d,k}(x) P_{d,k}(y)
inline double eval_Q(const OrthoBasis& basis, double x, double y) {
  return std::exp(2.0 * basis.log_scale()) * basis.christoffel_normalized(x, y);
}

inline double eval_Q(const MeasureSpec& s, int d, int n, double x, double y) {
  return eval_Q(build_basis(s, d, n), x, y);
}

// Recurrence coefficients of the measure normalized to unit mass, for n
// quadrature nodes (moments up to s_{2n} required).
inline detail::Recurrence recurrence_coefficients(const MeasureSpec& s, int n) {
  if (n < 1) throw ParameterError("recurrence_coefficients: need n >= 1");
  if (s.has_exact_moments()) {
    Rational s0 = *s.exact_moment(0);
    auto mfn = [&](int k) { return Rational(*s.exact_moment(k) / s0); };
    return detail::recurrence_from_monic(
        detail::monic_orthogonalize<Rational>(mfn, n));
  }
  std::vector<double> m(2 * n + 1);
  const double log_s0 = s.log_moment(0);
  for (int k = 0; k <= 2 * n; ++k) {
    m[k] = std::exp(s.log_moment(k) - log_s0);
  }
  double cond = detail::condition_estimate(m, n);
  if (cond > detail::kConditionLimit) {
    throw ConditioningError("moment matrix condition " + std::to_string(cond) +
                                " exceeds 1e12 while building a " +
                                std::to_string(n) + "-node rule",
                            cond);
  }
  auto mfn = [&](int k) { return m[k]; };
  return detail::recurrence_from_monic(
      detail::monic_orthogonalize<double>(mfn, n));
}

// Cross-check of the Hankel determinant D_{d,n} = det [s_{d+i+j}]_{0..n}
// against its representation as a multiple sum over atom tuples with a
// squared Vandermonde density. Only meaningful for discrete measures, where
// the multiple integral collapses to a finite sum.
inline double heine_check(const MeasureSpec& s, int d, int n) {
  if (s.kind() != MeasureKind::DiscreteAtoms) {
    throw ParameterError("heine_check requires a DiscreteAtoms measure");
  }
  if (d < 0 || n < 0) throw ParameterError("heine_check: d, n must be >= 0");

  const int size = n + 1;
  Eigen::MatrixXd M(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) M(i, j) = s.moment(d + i + j);
  const double det_direct = M.determinant();

  // masses of the shifted measure x^d dmu
  const std::vector<Atom>& atoms = s.atoms();
  const int N = static_cast<int>(atoms.size());
  std::vector<double> mass(N), pos(N);
  for (int k = 0; k < N; ++k) {
    pos[k] = atoms[k].position;
    mass[k] = atoms[k].weight * (d == 0 ? 1.0 : std::pow(pos[k], d));
  }

  double sum = 0.0;
  std::vector<int> idx(size, 0);
  while (true) {
    double term = 1.0;
    for (int j = 0; j < size; ++j) term *= mass[idx[j]];
    for (int j = 0; j < size && term != 0.0; ++j) {
      for (int k = j + 1; k < size; ++k) {
        double diff = pos[idx[j]] - pos[idx[k]];
        term *= diff * diff;
      }
    }
    sum += term;
    int p = size - 1;
    while (p >= 0 && idx[p] == N - 1) idx[p--] = 0;
    if (p < 0) break;
    ++idx[p];
  }
  double factorial = 1.0;
  for (int j = 2; j <= size; ++j) factorial *= j;
  const double det_heine = sum / factorial;

  const double scale =
      std::max({std::abs(det_direct), std::abs(det_heine), 1e-300});
  return std::abs(det_direct - det_heine) / scale;
}

}  // namespace polykernel
