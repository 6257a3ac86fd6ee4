#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <polykernel/polykernel.hpp>

#include "support.hpp"

namespace pk = polykernel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using pk::Complex;

namespace {

void check_complex(Complex got, Complex want, double tol) {
  CHECK(std::abs(got - want) <= tol * (1.0 + std::abs(want)));
}

}  // namespace

TEST_CASE("profile values at simple arguments") {
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  const pk::SeriesValue at0 = pk::F_qs(disc1, {0.0, 0.0}, 0.3, 0.8);
  check_complex(at0.value, {1.0, 0.0}, 1e-13);
  CHECK(at0.terms_used == 1);
  CHECK_FALSE(at0.truncated);

  // order 1 plane profile is the exponential series in lambda
  const pk::KernelParams plane1(pk::MeasureSpec::fock(0.0), 1);
  const pk::SeriesValue exp07 = pk::F_qs(plane1, {0.7, 0.0}, 2.0, 5.0);
  check_complex(exp07.value, {std::exp(0.7), 0.0}, 1e-11);
  CHECK_FALSE(exp07.truncated);

  // at lambda = 0 only the Christoffel term of shift 0 survives
  const pk::KernelParams disc2(pk::MeasureSpec::bergman(0.0), 2);
  check_complex(pk::F_qs(disc2, {0.0, 0.0}, 0.0, 0.0).value, {4.0, 0.0}, 1e-12);
}

TEST_CASE("kernel values match classical summation") {
  // sum_m (m+1) |z|^{2m} at z = w = 1/2 is 16/9
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  double direct = 0.0;
  for (int m = 0; m < 200; ++m) direct += (m + 1) * std::pow(0.25, m);
  CHECK_THAT(direct, WithinRel(16.0 / 9.0, 1e-14));
  check_complex(pk::R_kernel(disc1, {0.5, 0.0}, {0.5, 0.0}).value,
                {16.0 / 9.0, 0.0}, 1e-10);

  const pk::KernelParams plane2(pk::MeasureSpec::fock(0.0), 2);
  check_complex(pk::R_kernel(plane2, {1.0, 0.0}, {0.0, 0.0}).value, {1.0, 0.0},
                1e-12);

  for (const pk::MeasureSpec& s :
       {pk::MeasureSpec::bergman(2.5), pk::MeasureSpec::fock(0.5),
        pk::MeasureSpec::atoms({{1.0, 0.5}, {2.0, 0.25}, {4.0, 0.25}})}) {
    const pk::KernelParams p(s, 2);
    const Complex diag = pk::R_kernel(p, {0.0, 0.0}, {0.0, 0.0}).value;
    CHECK(diag.real() > 0.0);
    CHECK_THAT(diag.imag(), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("kernel basis functions") {
  // constant member 1/sqrt(s_0)
  const pk::KernelParams disc(pk::MeasureSpec::bergman(1.0), 2);
  const double inv_sqrt_s0 = std::sqrt(2.0);  // s_0 = 1/2
  check_complex(pk::H_basis(disc, 0, 0, {0.3, 0.4}), {inv_sqrt_s0, 0.0}, 1e-13);
  check_complex(pk::H_basis(disc, 0, 0, {0.0, 0.0}), {inv_sqrt_s0, 0.0}, 1e-13);

  // H_{1,0}(z) = z P_{1,0}(|z|^2) and P_{1,0} = 1/sqrt(s_1) = sqrt(2)
  const pk::KernelParams leb(pk::MeasureSpec::bergman(0.0), 1);
  check_complex(pk::H_basis(leb, 1, 0, {0.5, 0.0}), {0.5 * std::sqrt(2.0), 0.0},
                1e-13);

  // m = n members are radial, hence real on any ray
  const Complex h11 = pk::H_basis(leb, 1, 1, {0.0, 0.6});
  CHECK_THAT(h11.imag(), WithinAbs(0.0, 1e-15));
  const pk::OrthoBasis b = pk::build_basis(pk::MeasureSpec::bergman(0.0), 0, 1);
  CHECK_THAT(h11.real(), WithinRel(pk::eval_P(b, 1, 0.36), 1e-13));

  // off-diagonal members vanish at the origin
  check_complex(pk::H_basis(leb, 2, 0, {0.0, 0.0}), {0.0, 0.0}, 1e-15);
  CHECK_THROWS_AS(pk::H_basis(leb, -1, 0, {0.1, 0.0}), pk::ParameterError);
}

TEST_CASE("partial basis expansions converge to the kernel") {
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  CHECK(pk::kernel_expansion_check(disc1, {0.0, 0.0}, {0.0, 0.0}, 10) <= 1e-12);

  const pk::KernelParams plane2(pk::MeasureSpec::fock(0.0), 2);
  const Complex z{0.5, 0.0};
  const Complex w{0.0, 0.25};
  CHECK(pk::kernel_expansion_check(plane2, z, w, 60) <= 1e-9);

  // errors shrink as the expansion grows
  const double e5 = pk::kernel_expansion_check(plane2, z, w, 5);
  const double e25 = pk::kernel_expansion_check(plane2, z, w, 25);
  const double e60 = pk::kernel_expansion_check(plane2, z, w, 60);
  CHECK(e25 <= e5 + 1e-15);
  CHECK(e60 <= e25 + 1e-14);

  const pk::KernelParams disc2(pk::MeasureSpec::bergman(1.0), 2);
  CHECK(pk::kernel_expansion_check(disc2, {0.6, 0.0}, {0.6, 0.0}, 512) <= 1e-7);

  CHECK_THROWS_AS(pk::kernel_expansion_check(disc1, z, z, -1),
                  pk::ParameterError);
}

TEST_CASE("kernel symmetry invariants") {
  std::vector<pk::KernelParams> params;
  params.emplace_back(pk::MeasureSpec::bergman(0.5), 2);
  params.emplace_back(pk::MeasureSpec::fock(1.0), 3);
  params.emplace_back(
      pk::MeasureSpec::atoms({{1.0, 0.5}, {2.0, 0.25}, {4.0, 0.25}}), 2);
  const std::vector<std::pair<Complex, Complex>> pairs = {
      {{0.3, 0.1}, {-0.2, 0.4}},
      {{0.0, 0.45}, {0.25, -0.15}},
      {{0.5, 0.0}, {0.1, 0.2}}};

  for (const pk::KernelParams& p : params) {
    for (const auto& [z, w] : pairs) {
      const Complex a = pk::R_kernel(p, z, w).value;
      const Complex b = pk::R_kernel(p, w, z).value;
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * (1.0 + std::abs(a)));

      // rotation invariance of the underlying measure
      for (double theta : {0.3, 2.1, 4.9}) {
        const Complex rot{std::cos(theta), std::sin(theta)};
        const Complex c = pk::R_kernel(p, rot * z, rot * w).value;
        CHECK(std::abs(a - c) <= 1e-12 * (1.0 + std::abs(a)));
      }
    }
    const Complex diag = pk::R_kernel(p, {0.3, 0.1}, {0.3, 0.1}).value;
    CHECK(diag.real() > 0.0);
    CHECK(std::abs(diag.imag()) <= 1e-12 * diag.real());
  }
}

TEST_CASE("kernel Gram matrices are positive semidefinite") {
  struct Config {
    pk::KernelParams params;
    double radius;
  };
  std::vector<Config> configs;
  configs.push_back({pk::KernelParams(pk::MeasureSpec::bergman(0.5), 2), 0.8});
  configs.push_back({pk::KernelParams(pk::MeasureSpec::fock(1.0), 2), 1.6});
  configs.push_back(
      {pk::KernelParams(
           pk::MeasureSpec::atoms({{1.0, 0.5}, {2.0, 0.25}, {4.0, 0.25}}), 2),
       0.4});

  std::mt19937_64 rng(20240915);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const Config& cfg : configs) {
    std::vector<Complex> pts;
    while (pts.size() < 6) {
      const Complex c{unit(rng), unit(rng)};
      if (std::abs(c) <= 1.0) pts.push_back(cfg.radius * c);
    }
    Eigen::MatrixXcd G(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        G(i, j) = pk::R_kernel(cfg.params, pts[i], pts[j]).value;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (G + Eigen::MatrixXcd(G.adjoint())), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().maxCoeff());
  }
}

TEST_CASE("pointwise bound from the kernel diagonal") {
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  CHECK_THAT(pk::point_bound(disc1, {0.0, 0.0}), WithinRel(1.0, 1e-12));

  const pk::KernelParams disc2(pk::MeasureSpec::bergman(0.0), 2);
  CHECK_THAT(pk::point_bound(disc2, {0.0, 0.0}), WithinRel(2.0, 1e-12));

  const pk::KernelParams plane1(pk::MeasureSpec::fock(0.0), 1);
  CHECK_THAT(pk::point_bound(plane1, {1.0, 0.0}),
             WithinRel(std::exp(0.5), 1e-11));

  // |f(z)| <= point_bound(z) * ||f|| on a sample of space members
  const pk::QuadratureRule rule =
      pk::build_rule(pk::MeasureSpec::bergman(0.0), 6, 5);
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const pk::PolyanalyticPoly f = pk::random_polyanalytic(2, 3, seed);
    const double norm = std::sqrt(
        pk::integrate(rule, [&](Complex w) {
          return Complex{std::norm(f.eval(w)), 0.0};
        }).real());
    for (const Complex z : {Complex{0.2, 0.1}, Complex{-0.4, 0.3}}) {
      CHECK(std::abs(f.eval(z)) <=
            pk::point_bound(disc2, z) * norm * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("series domain and truncation behavior") {
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  CHECK_THROWS_AS(pk::R_kernel(disc1, {1.2, 0.0}, {0.1, 0.0}), pk::DomainError);
  CHECK_THROWS_AS(pk::F_qs(disc1, {1.0, 0.0}, 0.5, 0.5), pk::DomainError);
  CHECK_THROWS_AS(pk::F_qs(disc1, {0.5, 0.0}, -0.1, 0.5), pk::ParameterError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(pk::F_qs(disc1, {nan, 0.0}, 0.5, 0.5), pk::ParameterError);

  // mass on the boundary circle: evaluation there is allowed while the
  // profile argument stays inside the disc
  const pk::KernelParams two(pk::MeasureSpec::atoms({{1.0, 1.0}, {4.0, 1.0}}),
                             1);
  CHECK_THROWS_AS(pk::R_kernel(two, {2.05, 0.0}, {0.1, 0.0}), pk::DomainError);
  CHECK_THROWS_AS(pk::F_qs(two, {4.0, 0.0}, 1.0, 1.0), pk::DomainError);
  const pk::SeriesValue edge = pk::R_kernel(two, {2.0, 0.0}, {0.5, 0.0});
  CHECK(std::isfinite(edge.value.real()));

  // hard cap reached before the stopping rule
  pk::TruncationPolicy tight;
  tight.max_terms = 8;
  const pk::KernelParams capped(pk::MeasureSpec::bergman(0.0), 1, tight);
  const pk::SeriesValue v = pk::R_kernel(capped, {0.7, 0.0}, {0.7, 0.0});
  CHECK(v.truncated);
  CHECK(v.terms_used == 8);

  // the same evaluation under the default policy converges untruncated
  const pk::SeriesValue full = pk::R_kernel(disc1, {0.7, 0.0}, {0.7, 0.0});
  CHECK_FALSE(full.truncated);
  check_complex(full.value, {1.0 / std::pow(1.0 - 0.49, 2.0), 0.0}, 1e-11);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(pk::KernelParams(pk::MeasureSpec::bergman(0.0), 0),
                  pk::ParameterError);

  pk::TruncationPolicy bad;
  bad.max_terms = 1;
  CHECK_THROWS_AS(pk::KernelParams(pk::MeasureSpec::bergman(0.0), 2, bad),
                  pk::ParameterError);
  bad.max_terms = 64;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(pk::KernelParams(pk::MeasureSpec::bergman(0.0), 2, bad),
                  pk::ParameterError);
  bad.rel_tol = 1e-12;
  bad.consecutive_small = 0;
  CHECK_THROWS_AS(pk::KernelParams(pk::MeasureSpec::bergman(0.0), 2, bad),
                  pk::ParameterError);

  // an order-2 space needs two circles of positive radius
  CHECK_THROWS_AS(
      pk::KernelParams(pk::MeasureSpec::atoms({{0.0, 1.0}, {2.0, 1.0}}), 2),
      pk::ParameterError);
  CHECK_NOTHROW(
      pk::KernelParams(pk::MeasureSpec::atoms({{0.0, 1.0}, {2.0, 1.0}}), 1));
}

TEST_CASE("product kernels") {
  const pk::KernelParams disc1(pk::MeasureSpec::bergman(0.0), 1);
  const pk::KernelParams plane1(pk::MeasureSpec::fock(0.0), 1);

  // a single factor is the plain kernel
  {
    std::vector<pk::KernelParams> fs = {disc1};
    std::vector<Complex> z = {{0.3, 0.2}};
    std::vector<Complex> w = {{-0.1, 0.4}};
    const pk::SeriesValue prod = pk::product_kernel(fs, z, w);
    const pk::SeriesValue single = pk::R_kernel(disc1, z[0], w[0]);
    CHECK(prod.value == single.value);
    CHECK(prod.terms_used == single.terms_used);
  }

  // plane factors against w = 0 each contribute 1
  {
    std::vector<pk::KernelParams> fs = {plane1, plane1};
    std::vector<Complex> z = {{0.7, 0.3}, {-1.1, 0.2}};
    std::vector<Complex> w = {{0.0, 0.0}, {0.0, 0.0}};
    check_complex(pk::product_kernel(fs, z, w).value, {1.0, 0.0}, 1e-12);
  }

  // two identical disc factors square the one-coordinate value
  {
    std::vector<pk::KernelParams> fs = {disc1, disc1};
    std::vector<Complex> z = {{0.5, 0.0}, {0.5, 0.0}};
    const double expect = (16.0 / 9.0) * (16.0 / 9.0);
    check_complex(pk::product_kernel(fs, z, z).value, {expect, 0.0}, 1e-10);

    const double pb = pk::point_bound(fs, z);
    CHECK_THAT(pb, WithinRel(16.0 / 9.0, 1e-10));
  }

  // truncation flags propagate from any factor
  {
    pk::TruncationPolicy tight;
    tight.max_terms = 4;
    const pk::KernelParams capped(pk::MeasureSpec::bergman(0.0), 1, tight);
    std::vector<pk::KernelParams> fs = {disc1, capped};
    std::vector<Complex> z = {{0.2, 0.0}, {0.7, 0.0}};
    const pk::SeriesValue v = pk::product_kernel(fs, z, z);
    CHECK(v.truncated);
  }

  // mismatched orders and lengths are rejected
  {
    const pk::KernelParams disc2(pk::MeasureSpec::bergman(0.0), 2);
    std::vector<pk::KernelParams> fs = {disc1, disc2};
    std::vector<Complex> z = {{0.1, 0.0}, {0.1, 0.0}};
    CHECK_THROWS_AS(pk::product_kernel(fs, z, z), pk::ParameterError);
    std::vector<pk::KernelParams> ok = {disc1, disc1};
    std::vector<Complex> shorter = {{0.1, 0.0}};
    CHECK_THROWS_AS(pk::product_kernel(ok, shorter, z), pk::ParameterError);
  }
}
