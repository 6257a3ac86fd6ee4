#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>

#include "polykernel/errors.hpp"
#include "polykernel/measures.hpp"
#include "polykernel/orthopoly.hpp"
#include "polykernel/special.hpp"

// Series construction of the reproducing kernel of the order-q polyanalytic
// space attached to a radial moment sequence s. The two-variable profile
//
//   F(lambda, x, y) = sum_{d>=0} lambda^d Q_{d,q-1}(x,y)
//                   + sum_{d=1}^{q-1} conj(lambda)^d Q_{d,q-1-d}(x,y)
//
// yields the kernel as R(z,w) = F(z*conj(w), |z|^2, |w|^2). Each term is
// evaluated as exp(d*ln|lambda| - ln s_d) * (normalized Christoffel sum), so
// the factorial-sized factors never meet outside log space.

namespace polykernel {

struct TruncationPolicy {
  int max_terms = 512;        // hard cap on radial series terms
  double rel_tol = 1e-12;     // term-vs-partial-sum threshold
  int consecutive_small = 5;  // small terms in a row required to stop
};

struct SeriesValue {
  Complex value{0.0, 0.0};
  int terms_used = 0;     // evaluated terms of the infinite radial sum
  bool truncated = false; // max_terms hit before the stopping rule fired
};

// Measure + polyanalytic order + truncation policy, plus a shared cache of
// the per-shift orthonormal bases. Copies share the cache; access is
// mutex-guarded so evaluations may run concurrently.
class KernelParams {
 public:
  KernelParams(MeasureSpec spec, int q, TruncationPolicy policy = {})
      : spec_(std::move(spec)),
        q_(q),
        policy_(policy),
        radius_(polykernel::support_radius(spec_)),
        cache_(std::make_shared<Cache>()) {
    if (q_ < 1) throw ParameterError("KernelParams: order q must be >= 1");
    // The q - 1 conjugate-shift terms are not optional, so the cap must at
    // least cover them plus one term of the main series.
    if (policy_.max_terms < q_ || policy_.consecutive_small < 1 ||
        !(policy_.rel_tol > 0.0)) {
      throw ParameterError("KernelParams: invalid truncation policy");
    }
    if (spec_.kind() == MeasureKind::DiscreteAtoms &&
        spec_.positive_atom_count() < q_) {
      throw ParameterError(
          "KernelParams: a discrete measure needs at least q strictly "
          "positive atoms to carry an order-q space");
    }
  }

  const MeasureSpec& measure() const { return spec_; }
  int order() const { return q_; }
  const TruncationPolicy& truncation() const { return policy_; }
  const SupportRadius& radius() const { return radius_; }

  std::shared_ptr<const OrthoBasis> basis(int d, int n) const {
    std::scoped_lock lock(cache_->mutex);
    auto key = std::make_pair(d, n);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
    auto built = std::make_shared<const OrthoBasis>(build_basis(spec_, d, n));
    cache_->entries.emplace(key, built);
    return built;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, int>, std::shared_ptr<const OrthoBasis>> entries;
  };

  MeasureSpec spec_;
  int q_;
  TruncationPolicy policy_;
  SupportRadius radius_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

// lambda^d * Q_{d,n}(x,y) assembled from the normalized basis in log space;
// log_abs_lambda is ignored for d == 0 so lambda == 0 never produces NaN.
inline Complex scaled_term(const OrthoBasis& basis, double x, double y, int d,
                           double log_abs_lambda, double arg_lambda) {
  const double qt = basis.christoffel_normalized(x, y);
  const double expo =
      (d == 0 ? 0.0 : d * log_abs_lambda) + 2.0 * basis.log_scale();
  if (qt == 0.0) return {0.0, 0.0};
  const double mag = std::exp(expo + std::log(std::abs(qt)));
  const double phase = d * arg_lambda;
  const double sign = qt > 0.0 ? 1.0 : -1.0;
  return {sign * mag * std::cos(phase), sign * mag * std::sin(phase)};
}

}  // namespace detail

// Two-variable kernel profile. Domain: |lambda| < R_s^2; x, y finite reals
// (squared radii, so >= 0). Truncation behavior is controlled by the policy
// in params; hitting max_terms sets the truncated flag instead of throwing.
inline SeriesValue F_qs(const KernelParams& params, Complex lambda, double x,
                        double y) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) ||
      !std::isfinite(x) || !std::isfinite(y)) {
    throw ParameterError("F_qs: non-finite arguments");
  }
  if (x < 0.0 || y < 0.0) {
    throw ParameterError("F_qs: x and y are squared radii and must be >= 0");
  }
  const SupportRadius& radius = params.radius();
  if (radius.is_finite()) {
    const double r2 = radius.value * radius.value;
    if (std::abs(lambda) >= r2) {
      throw DomainError("F_qs: |lambda| = " + std::to_string(std::abs(lambda)) +
                        " outside the convergence disc |lambda| < " +
                        std::to_string(r2));
    }
  }

  const int q = params.order();
  const TruncationPolicy& pol = params.truncation();
  SeriesValue out;

  if (lambda == Complex{0.0, 0.0}) {
    // only the d = 0 term of the radial sum survives (0^0 = 1)
    const OrthoBasis& b = *params.basis(0, q - 1);
    out.value = detail::scaled_term(b, x, y, 0, 0.0, 0.0);
    out.terms_used = 1;
    return out;
  }

  const double log_abs = std::log(std::abs(lambda));
  const double arg = std::arg(lambda);

  // finite antiholomorphic correction: conj(lambda)^d Q_{d,q-1-d}
  Complex value{0.0, 0.0};
  for (int d = 1; d <= q - 1; ++d) {
    const OrthoBasis& b = *params.basis(d, q - 1 - d);
    value += detail::scaled_term(b, x, y, d, log_abs, -arg);
  }

  int small_run = 0;
  for (int d = 0; d < pol.max_terms; ++d) {
    const OrthoBasis& b = *params.basis(d, q - 1);
    const Complex term = detail::scaled_term(b, x, y, d, log_abs, arg);
    value += term;
    out.terms_used = d + 1;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      // series diverged numerically; report honestly instead of spinning
      out.truncated = true;
      break;
    }
    if (std::abs(term) <= pol.rel_tol * std::abs(value)) {
      if (++small_run >= pol.consecutive_small) break;
    } else {
      small_run = 0;
    }
    if (d + 1 == pol.max_terms) out.truncated = true;
  }
  out.value = value;
  return out;
}

// Kernel of the order-q space: R(z,w) = F(z*conj(w), |z|^2, |w|^2). Points on
// the boundary circle |z| = R_s are admitted (discrete measures put mass
// there); the profile's own |lambda| < R_s^2 check still rejects diagonal
// boundary evaluation.
inline SeriesValue R_kernel(const KernelParams& params, Complex z, Complex w) {
  const SupportRadius& radius = params.radius();
  if (radius.is_finite()) {
    const double limit = radius.value * (1.0 + 1e-12);
    if (std::abs(z) > limit || std::abs(w) > limit) {
      throw DomainError("R_kernel: points must lie in the closed disc |z| <= " +
                        std::to_string(radius.value));
    }
  }
  return F_qs(params, z * std::conj(w), std::norm(z), std::norm(w));
}

// Orthonormal basis H_{m,n}(z) = r^{|m-n|} e^{i(m-n)arg z} P_{|m-n|,min(m,n)}(r^2),
// extended continuously to z = 0.
inline Complex H_basis(const KernelParams& params, int m, int n, Complex z) {
  if (m < 0 || n < 0) throw ParameterError("H_basis: indices must be >= 0");
  const int d = std::abs(m - n);
  const int k = std::min(m, n);
  const OrthoBasis& basis = *params.basis(d, k);
  const double r = std::abs(z);
  if (r == 0.0) {
    return m == n ? Complex{basis.eval(k, 0.0), 0.0} : Complex{0.0, 0.0};
  }
  const Complex xi = z / r;
  return std::pow(r, d) * ipow(xi, m - n) * basis.eval(k, r * r);
}

// Deviation between the series kernel and the partial basis expansion
// sum_{n<q} sum_{m<=M} H_{m,n}(z) conj(H_{m,n}(w)), scaled by the kernel size.
inline double kernel_expansion_check(const KernelParams& params, Complex z,
                                     Complex w, int M) {
  if (M < 0) throw ParameterError("kernel_expansion_check: M must be >= 0");
  const Complex direct = R_kernel(params, z, w).value;
  Complex acc{0.0, 0.0};
  for (int n = 0; n < params.order(); ++n) {
    for (int m = 0; m <= M; ++m) {
      acc += H_basis(params, m, n, z) * std::conj(H_basis(params, m, n, w));
    }
  }
  return std::abs(direct - acc) / (1.0 + std::abs(direct));
}

// Tensor-product kernel over p independent coordinates, each with its own
// measure but a common order q. terms_used accumulates across coordinates;
// truncated is the disjunction.
inline SeriesValue product_kernel(std::span<const KernelParams> factors,
                                  std::span<const Complex> z,
                                  std::span<const Complex> w) {
  if (factors.empty() || factors.size() != z.size() ||
      factors.size() != w.size()) {
    throw ParameterError("product_kernel: factor/point count mismatch");
  }
  const int q = factors.front().order();
  for (const KernelParams& f : factors) {
    if (f.order() != q) {
      throw ParameterError("product_kernel: all factors must share the order q");
    }
  }
  SeriesValue out;
  out.value = Complex{1.0, 0.0};
  for (std::size_t j = 0; j < factors.size(); ++j) {
    SeriesValue v = R_kernel(factors[j], z[j], w[j]);
    out.value *= v.value;
    out.terms_used += v.terms_used;
    out.truncated = out.truncated || v.truncated;
  }
  return out;
}

// Best constant in |f(z)| <= C ||f|| for the order-q space: sqrt of the
// kernel diagonal, C(z) = sqrt(F(|z|^2, |z|^2, |z|^2)).
inline double point_bound(const KernelParams& params, Complex z) {
  const double x = std::norm(z);
  const SeriesValue v = F_qs(params, Complex{x, 0.0}, x, x);
  return std::sqrt(std::max(v.value.real(), 0.0));
}

inline double point_bound(std::span<const KernelParams> factors,
                          std::span<const Complex> z) {
  if (factors.empty() || factors.size() != z.size()) {
    throw ParameterError("point_bound: factor/point count mismatch");
  }
  double acc = 1.0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const double x = std::norm(z[j]);
    acc *= F_qs(factors[j], Complex{x, 0.0}, x, x).value.real();
  }
  return std::sqrt(std::max(acc, 0.0));
}

}  // namespace polykernel
