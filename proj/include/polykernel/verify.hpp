#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polykernel/closedform.hpp"
#include "polykernel/errors.hpp"
#include "polykernel/kernelseries.hpp"
#include "polykernel/measures.hpp"
#include "polykernel/orthopoly.hpp"

// Independent numerical verification of the kernel construction: Gauss rules
// for the radial measure derived from the library's own orthonormal
// polynomials (Jacobi-matrix eigenvalues), a uniform angular grid, and the
// standard battery of checks (basis orthonormality, reproducing property,
// projections, Gram positivity).

namespace polykernel {

struct RadialNode {
  double position = 0.0;  // t = squared radius
  double weight = 0.0;
};

struct QuadratureRule {
  std::vector<RadialNode> radial;
  int angular_count = 1;      // number of equispaced angles, 2*max_freq + 1
  int exactness_degree = 0;   // radial polynomial degree integrated exactly

  int max_freq() const { return (angular_count - 1) / 2; }
};

// Quadrature for integral f dnu: Gauss nodes/weights of the radial profile
// measure paired with a uniform angular grid. radial_degree is the number of
// Gauss nodes; the resulting rule integrates radial polynomials of degree up
// to 2*radial_degree - 1 exactly (reproduces s_0..s_{2*radial_degree-1}). For
// a discrete measure the atoms themselves are the (exact) radial rule.
inline QuadratureRule build_rule(const MeasureSpec& s, int radial_degree,
                                 int max_freq) {
  if (radial_degree < 1 || max_freq < 0) {
    throw ParameterError(
        "build_rule: radial_degree must be >= 1 and max_freq >= 0");
  }
  QuadratureRule rule;
  rule.angular_count = 2 * max_freq + 1;

  if (s.kind() == MeasureKind::DiscreteAtoms) {
    for (const Atom& a : s.atoms()) rule.radial.push_back({a.position, a.weight});
    rule.exactness_degree = std::numeric_limits<int>::max();
    return rule;
  }

  const int nodes = radial_degree;
  detail::Recurrence rec = recurrence_coefficients(s, nodes);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 0; k < nodes; ++k) J(k, k) = rec.a[k];
  for (int k = 1; k < nodes; ++k) {
    const double off = std::sqrt(rec.b[k]);
    J(k, k - 1) = off;
    J(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConditioningError("build_rule: Jacobi matrix eigensolve failed",
                            std::numeric_limits<double>::infinity());
  }

  // Weights through the Christoffel function, w_k = s_0 / sum_j phat_j(t_k)^2
  // with phat_j the orthonormal polynomials of nu/s_0 run by the three-term
  // recurrence. The textbook alternative (s_0 times the squared first
  // eigenvector component) carries absolute error ~sqrt(w)*eps, which wipes
  // out all relative accuracy of the exponentially small outer weights of
  // unbounded-support measures; the forward recurrence tracks the dominant
  // solution at the nodes and keeps the relative error near n*eps.
  const double s0 = s.moment(0);
  rule.radial.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    const double x = es.eigenvalues()(k);
    double pm1 = 0.0;
    double p = 1.0;
    double sum = 1.0;
    for (int j = 0; j + 1 < nodes; ++j) {
      const double pnext =
          ((x - rec.a[j]) * p - (j > 0 ? std::sqrt(rec.b[j]) : 0.0) * pm1) /
          std::sqrt(rec.b[j + 1]);
      pm1 = p;
      p = pnext;
      sum += p * p;
    }
    rule.radial[k] = {x, s0 / sum};
  }
  rule.exactness_degree = 2 * nodes - 1;
  return rule;
}

// integral f dnu = sum_k w_k * (1/A) * sum_j f(sqrt(t_k) e^{2 pi i j / A})
inline Complex integrate(const QuadratureRule& rule,
                         const std::function<Complex(Complex)>& f) {
  const int A = rule.angular_count;
  Complex acc{0.0, 0.0};
  for (const RadialNode& node : rule.radial) {
    const double r = std::sqrt(node.position);
    Complex ring{0.0, 0.0};
    for (int j = 0; j < A; ++j) {
      const double theta = 2.0 * M_PI * j / A;
      ring += f(Complex{r * std::cos(theta), r * std::sin(theta)});
    }
    acc += node.weight / static_cast<double>(A) * ring;
  }
  return acc;
}

// Polynomial of polyanalytic order q: f(w) = sum c_{m,n} w^m conj(w)^n with
// n < q, m <= analytic_degree.
class PolyanalyticPoly {
 public:
  PolyanalyticPoly(int order, int analytic_degree)
      : q_(order), deg_(analytic_degree) {
    if (q_ < 1 || deg_ < 0) {
      throw ParameterError("PolyanalyticPoly: order >= 1, degree >= 0 required");
    }
    c_.assign(static_cast<std::size_t>(deg_ + 1) * q_, Complex{0.0, 0.0});
  }

  int order() const { return q_; }
  int analytic_degree() const { return deg_; }

  Complex coeff(int m, int n) const { return c_[index(m, n)]; }
  void set_coeff(int m, int n, Complex v) { c_[index(m, n)] = v; }

  Complex eval(Complex w) const {
    const Complex wc = std::conj(w);
    Complex acc{0.0, 0.0};
    for (int n = 0; n < q_; ++n) {
      // Horner in w for fixed conjugate power
      Complex inner{0.0, 0.0};
      for (int m = deg_; m >= 0; --m) inner = inner * w + coeff(m, n);
      acc += inner * ipow(wc, n);
    }
    return acc;
  }

 private:
  std::size_t index(int m, int n) const {
    if (m < 0 || m > deg_ || n < 0 || n >= q_) {
      throw ParameterError("PolyanalyticPoly: coefficient index out of range");
    }
    return static_cast<std::size_t>(m) * q_ + n;
  }

  int q_;
  int deg_;
  std::vector<Complex> c_;
};

// Deterministic random polynomial with coefficient components in [-1, 1].
inline PolyanalyticPoly random_polyanalytic(int order, int analytic_degree,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  PolyanalyticPoly f(order, analytic_degree);
  for (int m = 0; m <= analytic_degree; ++m) {
    for (int n = 0; n < order; ++n) {
      f.set_coeff(m, n, Complex{unit(rng), unit(rng)});
    }
  }
  return f;
}

struct VerificationReport {
  std::string check;
  std::string params;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
};

enum class KernelMethod { series, closed };

// Kernel evaluation dispatch shared by checks and the CLI. The closed method
// exists only for the two built-in weight families.
inline Complex kernel_value(const KernelParams& params, KernelMethod method,
                            Complex z, Complex w) {
  if (method == KernelMethod::series) return R_kernel(params, z, w).value;
  switch (params.measure().kind()) {
    case MeasureKind::BergmanWeight:
      return bergman_kernel(params.measure().alpha(), params.order(), z, w);
    case MeasureKind::FockWeight:
      return fock_kernel(params.measure().alpha(), params.order(), z, w);
    default:
      throw ParameterError(
          "closed-form kernel is only available for the bergman and fock "
          "weights");
  }
}

namespace detail {

inline std::string kernel_desc(const KernelParams& params) {
  std::ostringstream os;
  os << params.measure().describe() << ", q=" << params.order();
  return os.str();
}

inline void require_rule(const QuadratureRule& rule, int radial_degree,
                         int max_freq, const char* who) {
  if (rule.exactness_degree < radial_degree || rule.max_freq() < max_freq) {
    std::ostringstream os;
    os << who << ": rule under-resolved (needs radial exactness >= "
       << radial_degree << " and max_freq >= " << max_freq << ", has "
       << rule.exactness_degree << " / " << rule.max_freq() << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace detail

// Gram matrix of {H_{m,n} : m <= M, n < q} under the rule, compared against
// the identity. Pure polynomial integrands, so with an adequate rule the
// deviation is pure roundoff.
inline VerificationReport check_H_orthonormality(const KernelParams& params,
                                                 int M,
                                                 const QuadratureRule& rule,
                                                 double tolerance = 1e-10) {
  if (M < 0) throw ParameterError("check_H_orthonormality: M must be >= 0");
  const int q = params.order();
  detail::require_rule(rule, 2 * M + 2 * q, M + q, "check_H_orthonormality");

  // tabulate basis values on the grid once; Gram = V diag(w) V^H
  const int rows = (M + 1) * q;
  const int A = rule.angular_count;
  const int cols = static_cast<int>(rule.radial.size()) * A;
  Eigen::MatrixXcd V(rows, cols);
  Eigen::VectorXd wts(cols);
  int col = 0;
  for (const RadialNode& node : rule.radial) {
    const double r = std::sqrt(node.position);
    for (int j = 0; j < A; ++j, ++col) {
      const double theta = 2.0 * M_PI * j / A;
      const Complex w{r * std::cos(theta), r * std::sin(theta)};
      wts(col) = node.weight / A;
      int row = 0;
      for (int m = 0; m <= M; ++m) {
        for (int n = 0; n < q; ++n, ++row) V(row, col) = H_basis(params, m, n, w);
      }
    }
  }
  Eigen::MatrixXcd gram = V * wts.asDiagonal() * V.adjoint();
  double max_dev = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      max_dev = std::max(max_dev, std::abs(gram(i, j) - target));
    }
  }
  VerificationReport rep;
  rep.check = "H_orthonormality";
  rep.params = detail::kernel_desc(params) + ", M=" + std::to_string(M);
  rep.max_error = max_dev;
  rep.tolerance = tolerance;
  rep.pass = max_dev <= tolerance;
  return rep;
}

// <f, K(.,z)> = integral f(w) K(z,w) dnu(w) must reproduce f(z) for every
// polynomial of order <= q within the rule's resolution. Error is scaled by
// 1 + |f(z)|.
inline VerificationReport check_reproducing(const KernelParams& params,
                                            const PolyanalyticPoly& f,
                                            Complex z,
                                            const QuadratureRule& rule,
                                            KernelMethod method,
                                            double tolerance = 1e-9) {
  if (f.order() > params.order()) {
    throw ParameterError(
        "check_reproducing: f has higher polyanalytic order than the space");
  }
  const int da = f.analytic_degree();
  const int q = params.order();
  detail::require_rule(rule, 2 * (da + q), da + 2 * q, "check_reproducing");

  const Complex expected = f.eval(z);
  const Complex got = integrate(rule, [&](Complex w) {
    return f.eval(w) * kernel_value(params, method, z, w);
  });
  VerificationReport rep;
  rep.check = "reproducing";
  {
    std::ostringstream os;
    os << detail::kernel_desc(params) << ", deg=" << da << ", z=" << z.real()
       << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    rep.params = os.str();
  }
  rep.max_error = std::abs(got - expected) / (1.0 + std::abs(expected));
  rep.tolerance = tolerance;
  rep.pass = rep.max_error <= tolerance;
  return rep;
}

// Orthogonal projection of an arbitrary polynomial onto the order-q space:
// sum over basis inner products computed with the rule, re-expanded into
// monomial coefficients.
inline PolyanalyticPoly project(const KernelParams& params,
                                const PolyanalyticPoly& g,
                                const QuadratureRule& rule) {
  const int q = params.order();
  const int M = g.analytic_degree() + q - 1;  // beyond this all products vanish
  detail::require_rule(rule, 2 * (M + q), M + q, "project");

  PolyanalyticPoly out(q, M);
  for (int n = 0; n < q; ++n) {
    for (int m = 0; m <= M; ++m) {
      const Complex c = integrate(rule, [&](Complex w) {
        return g.eval(w) * std::conj(H_basis(params, m, n, w));
      });
      // expand c * H_{m,n} into monomials: H_{m,n} = w^{m-n} P(|w|^2) for
      // m >= n and conj(w)^{n-m} P(|w|^2) otherwise
      const int d = std::abs(m - n);
      const int k = std::min(m, n);
      const OrthoBasis& basis = *params.basis(d, k);
      for (int j = 0; j <= k; ++j) {
        const double pj = basis.coefficient(k, j);
        if (m >= n) {
          out.set_coeff(m - n + j, j, out.coeff(m - n + j, j) + c * pj);
        } else {
          out.set_coeff(j, n - m + j, out.coeff(j, n - m + j) + c * pj);
        }
      }
    }
  }
  return out;
}

// Hermitian symmetry and positive semidefiniteness of the Gram matrix
// [K(z_i, z_j)]. pass requires the Hermitian residual below hermitian_tol and
// min eigenvalue >= -eig_tol * max eigenvalue.
inline VerificationReport check_gram_psd(const KernelParams& params,
                                         std::span<const Complex> points,
                                         KernelMethod method,
                                         double eig_tol = 1e-9,
                                         double hermitian_tol = 1e-12) {
  if (points.empty()) {
    throw ParameterError("check_gram_psd: need at least one point");
  }
  const int N = static_cast<int>(points.size());
  Eigen::MatrixXcd G(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      G(i, j) = kernel_value(params, method, points[i], points[j]);
    }
  }
  const double scale = std::max(G.cwiseAbs().maxCoeff(), 1e-300);
  const double herm = (G - G.adjoint()).cwiseAbs().maxCoeff() / scale;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (G + Eigen::MatrixXcd(G.adjoint())), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  const double neg_ratio = hi > 0.0 ? std::max(0.0, -lo) / hi
                                    : std::numeric_limits<double>::infinity();

  VerificationReport rep;
  rep.check = "gram_psd";
  rep.params = detail::kernel_desc(params) + ", " + std::to_string(N) +
               " points, method=" +
               (method == KernelMethod::series ? "series" : "closed");
  rep.max_error = std::max(herm, neg_ratio);
  rep.tolerance = eig_tol;
  rep.pass = herm <= hermitian_tol && neg_ratio <= eig_tol;
  {
    std::ostringstream os;
    os << "hermitian_residual=" << herm << ", min_eig_ratio=" << -neg_ratio;
    rep.notes = os.str();
  }
  return rep;
}

// Series-vs-closed-form sweep over a deterministic polar grid of point pairs.
struct CompareResult {
  double max_rel_err = 0.0;
  Complex argmax_z{0.0, 0.0};
  Complex argmax_w{0.0, 0.0};
  int pairs = 0;
};

inline CompareResult compare_series_closed(const KernelParams& params,
                                           double rmax, int grid_n) {
  if (grid_n < 1 || !(rmax > 0.0)) {
    throw ParameterError("compare_series_closed: invalid grid");
  }
  CompareResult res;
  res.pairs = grid_n * grid_n;
  for (int i = 0; i < grid_n; ++i) {
    const double rz = rmax * (i + 1) / grid_n;
    const double az = 2.0 * M_PI * i / grid_n + 0.4;
    const Complex z{rz * std::cos(az), rz * std::sin(az)};
    for (int j = 0; j < grid_n; ++j) {
      const double rw = rmax * (j + 1) / grid_n;
      const double aw = 2.0 * M_PI * j / grid_n + 1.7;
      const Complex w{rw * std::cos(aw), rw * std::sin(aw)};
      const Complex series = R_kernel(params, z, w).value;
      const Complex closed = kernel_value(params, KernelMethod::closed, z, w);
      const double rel =
          std::abs(series - closed) / std::max(std::abs(closed), 1e-12);
      if (rel > res.max_rel_err) {
        res.max_rel_err = rel;
        res.argmax_z = z;
        res.argmax_w = w;
      }
    }
  }
  return res;
}

// Two-coordinate polyanalytic monomial combination used by the product-kernel
// reproducing check: f(z1,z2) = sum c * z1^{m1} conj(z1)^{n1} z2^{m2} conj(z2)^{n2}.
struct ProductTerm {
  int m1 = 0, n1 = 0, m2 = 0, n2 = 0;
  Complex c{0.0, 0.0};
};

inline Complex eval_product_poly(std::span<const ProductTerm> terms, Complex z1,
                                 Complex z2) {
  Complex acc{0.0, 0.0};
  for (const ProductTerm& t : terms) {
    acc += t.c * ipow(z1, t.m1) * ipow(std::conj(z1), t.n1) * ipow(z2, t.m2) *
           ipow(std::conj(z2), t.n2);
  }
  return acc;
}

// Reproducing property of the two-coordinate tensor kernel under the tensor
// rule: integral f(w1,w2) K1(z1,w1) K2(z2,w2) dnu1 dnu2 == f(z1,z2).
inline VerificationReport check_reproducing_2d(
    const KernelParams& p1, const KernelParams& p2,
    std::span<const ProductTerm> f, Complex z1, Complex z2,
    const QuadratureRule& rule1, const QuadratureRule& rule2,
    KernelMethod method, double tolerance = 1e-9) {
  int da1 = 0, da2 = 0;
  for (const ProductTerm& t : f) {
    if (t.n1 >= p1.order() || t.n2 >= p2.order()) {
      throw ParameterError("check_reproducing_2d: term order exceeds the space");
    }
    da1 = std::max(da1, t.m1);
    da2 = std::max(da2, t.m2);
  }
  detail::require_rule(rule1, 2 * (da1 + p1.order()), da1 + 2 * p1.order(),
                       "check_reproducing_2d");
  detail::require_rule(rule2, 2 * (da2 + p2.order()), da2 + 2 * p2.order(),
                       "check_reproducing_2d");

  const Complex expected = eval_product_poly(f, z1, z2);
  Complex got{0.0, 0.0};
  const int A1 = rule1.angular_count;
  const int A2 = rule2.angular_count;
  for (const RadialNode& node1 : rule1.radial) {
    const double r1 = std::sqrt(node1.position);
    for (int j1 = 0; j1 < A1; ++j1) {
      const double th1 = 2.0 * M_PI * j1 / A1;
      const Complex w1{r1 * std::cos(th1), r1 * std::sin(th1)};
      const Complex k1 = kernel_value(p1, method, z1, w1);
      const double wt1 = node1.weight / A1;
      for (const RadialNode& node2 : rule2.radial) {
        const double r2 = std::sqrt(node2.position);
        for (int j2 = 0; j2 < A2; ++j2) {
          const double th2 = 2.0 * M_PI * j2 / A2;
          const Complex w2{r2 * std::cos(th2), r2 * std::sin(th2)};
          got += wt1 * node2.weight / A2 * eval_product_poly(f, w1, w2) * k1 *
                 kernel_value(p2, method, z2, w2);
        }
      }
    }
  }
  VerificationReport rep;
  rep.check = "reproducing_2d";
  rep.params = detail::kernel_desc(p1) + " x " + detail::kernel_desc(p2);
  rep.max_error = std::abs(got - expected) / (1.0 + std::abs(expected));
  rep.tolerance = tolerance;
  rep.pass = rep.max_error <= tolerance;
  return rep;
}

}  // namespace polykernel
