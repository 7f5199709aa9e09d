#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <fracfvt/finval.hpp>
#include <fracfvt/fraccalc.hpp>
#include <fracfvt/quadrature.hpp>
#include <fracfvt/specfun.hpp>
#include <fracfvt/xform.hpp>

using namespace fracfvt;
using xform::Complex;
using xform::ComplexFreq;

namespace {
ComplexFreq freq(double re, double im = 0.0) {
  return ComplexFreq(Complex(re, im));
}
}  // namespace

TEST_CASE("laplace_numeric on closed-form references") {
  const auto cat = xform::Catalog::standard();
  CHECK(std::abs(xform::laplace_numeric(cat.at("exp_decay"), freq(1.0)) -
                 Complex(0.5)) <= 1e-8);
  CHECK(std::abs(xform::laplace_numeric(cat.at("const1"), freq(0.25)) -
                 Complex(4.0)) <= 1e-8);
  CHECK(std::abs(xform::laplace_numeric(cat.at("sin"), freq(1.0)) -
                 Complex(0.5)) <= 1e-8);
}

TEST_CASE("laplace_numeric rejects s at or below the exponential order") {
  xform::CatalogFunction f;
  f.name = "exp_growth";
  f.time_eval = [](double t) { return std::exp(t); };
  f.exp_order_c = 1.0;
  f.bound_M = 1.0;
  CHECK_THROWS(xform::laplace_numeric(f, freq(0.5)));
}

TEST_CASE("catalog transform consistency at random s") {
  const auto cat = xform::Catalog::standard();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (const auto& name : cat.names()) {
    const auto& f = cat.at(name);
    if (!f.has_transform()) continue;
    for (int i = 0; i < 20; ++i) {
      const double s = f.exp_order_c + dist(rng);
      const Complex closed = f.transform_eval(Complex(s, 0.0));
      const Complex numeric = xform::laplace_numeric(f, freq(s));
      CHECK(std::abs(closed - numeric) <=
            1e-6 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("catalog_tq_sin known transforms") {
  const auto f01 = xform::catalog_tq_sin(0.0, 1.0);
  CHECK(std::abs(f01.transform_eval(Complex(1.0, 0.0)) - Complex(0.5)) <=
        1e-12);
  CHECK(f01.known_sF_limit.has_value());
  CHECK(*f01.known_sF_limit == 0.0);

  const auto f12 = xform::catalog_tq_sin(1.0, 2.0);
  // L{t sin 2t}(1) = 4/25
  CHECK(std::abs(f12.transform_eval(Complex(1.0, 0.0)) - Complex(0.16)) <=
        1e-12);
  CHECK(std::abs(f12.transform_eval(Complex(1.0, 0.0)) -
                 xform::laplace_numeric(f12, freq(1.0))) <= 1e-6);

  const auto f21 = xform::catalog_tq_sin(2.0, 1.0);
  const Complex sF = Complex(1e-3, 0.0) * f21.transform_eval(Complex(1e-3, 0.0));
  CHECK(std::abs(sF) <= 1e-2);
}

TEST_CASE("catalog_tq_sin obeys the conjugate symmetry of a real signal") {
  const auto f = xform::catalog_tq_sin(1.5, 2.0);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> re(0.05, 5.0), im(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex a = f.transform_eval(std::conj(s));
    const Complex b = std::conj(f.transform_eval(s));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("kernel_integral closed-form cases for F = 1/s") {
  const xform::TransformEval F = [](Complex s) { return 1.0 / s; };
  // alpha = 0, s = 2: integral is 1/s = 0.5
  CHECK(std::abs(xform::kernel_integral(F, 0.0, freq(2.0)) - Complex(0.5)) <=
        1e-10);
  // alpha = 2, s = 1: (1/s) int_0^1 (1-v)^2 dv = 1/3
  CHECK(std::abs(xform::kernel_integral(F, 2.0, freq(1.0)) -
                 Complex(1.0 / 3.0)) <= 1e-10);
}

TEST_CASE("kernel_integral matches the time-side transform of g_alpha") {
  const auto f = xform::catalog_tq_sin(2.0, 1.0);
  const double s = 1e-2;
  const Complex ki = xform::kernel_integral(f.transform_eval, 2.0, freq(s));
  const auto lg = xform::laplace_of_cesaro_profile(
      f, 2.0, {s}, xform::CesaroGrid::for_smallest_s(s));
  CHECK(std::abs(s * ki - s * lg[0]) <= 1e-3);
}

TEST_CASE("kernel identity across the catalog") {
  const auto cat = xform::Catalog::standard();
  for (const char* name : {"const1", "exp_decay", "two_plus_cos3"}) {
    const auto& f = cat.at(name);
    for (const double alpha : {0.0, 0.5, 1.0, 2.0}) {
      for (const double s : {0.5, 0.1}) {
        const Complex ki =
            xform::kernel_integral(f.transform_eval, alpha, freq(s));
        const auto lg = xform::laplace_of_cesaro_profile(
            f, alpha, {s}, xform::CesaroGrid::for_smallest_s(s));
        CHECK(std::abs(ki - lg[0]) <=
              1e-4 * std::max(1.0, std::abs(ki)));
      }
    }
  }
}

TEST_CASE("kernel_integral integer alpha reduces to the binomial sum") {
  const auto cat = xform::Catalog::standard();
  const auto F = cat.at("exp_decay").transform_eval;
  for (const int alpha : {1, 2, 3}) {
    for (const double s : {0.5, 1.0}) {
      const Complex ki = xform::kernel_integral(
          F, static_cast<double>(alpha), freq(s));
      // sum_j C(alpha,j)(-1)^j int_1^inf F(su)/u^{j+1} du, each term via the
      // same v-substitution: int_0^1 F(s/v) v^{j-1} dv
      Complex sum = 0.0;
      for (int j = 0; j <= alpha; ++j) {
        const double cj = specfun::binomial_general(alpha, j) *
                          ((j % 2 == 0) ? 1.0 : -1.0);
        const auto bps = quad::geometric_breakpoints(0.0, 1.0, 0.125);
        const Complex term = quad::adaptive_segments(
            [&](double v) {
              return F(Complex(s, 0.0) / v) * std::pow(v, j - 1);
            },
            bps, quad::AdaptiveOptions{1e-12, 1e-10, 40});
        sum += cj * term;
      }
      CHECK(std::abs(ki - sum) <= 1e-8 * std::max(1.0, std::abs(ki)));
    }
  }
}

TEST_CASE("kernel_integral rejects transforms that fail the tail decay") {
  // F constant does not decay along the ray, so the u-integral diverges
  const xform::TransformEval F = [](Complex) { return Complex(1.0); };
  CHECK_THROWS(xform::kernel_integral(F, 0.5, freq(1.0)));
}

TEST_CASE("moment_vanishing_test") {
  const TimeGrid grid(0.0, 1e-3, 50001);
  SampledSignal zero(grid, Eigen::MatrixXd::Zero(grid.n, 1));
  const auto rz = xform::moment_vanishing_test(zero, 1.0, 1.0, 10, 1e-9);
  CHECK(rz.all_below);
  CHECK(rz.moments.cwiseAbs().maxCoeff() == 0.0);

  const auto s =
      SampledSignal::from_function(grid, [](double t) { return std::sin(t); });
  const auto rs = xform::moment_vanishing_test(s, 1.0, 1.0, 10, 1e-3);
  CHECK_FALSE(rs.all_below);
  // moment_0 = L{sin}(1) up to the e^{-50} truncation tail
  CHECK(rs.moments(0) == doctest::Approx(0.5).epsilon(1e-4));

  SampledSignal tiny = s;
  tiny.values() *= 1e-12;
  CHECK(xform::moment_vanishing_test(tiny, 1.0, 1.0, 10, 1e-6).all_below);
}

TEST_CASE("binomial_series_partial_sums converge to 1/(alpha+1)") {
  const auto sums =
      xform::binomial_series_partial_sums(0.5, {10, 100, 1000, 1000000});
  const double target = 2.0 / 3.0;
  double prev = std::abs(sums[0] - target);
  for (std::size_t i = 1; i < sums.size(); ++i) {
    const double err = std::abs(sums[i] - target);
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("sampled-signal laplace with constant tail") {
  const auto f = SampledSignal::from_function(TimeGrid(0.0, 1e-3, 20001),
                                              [](double) { return 1.0; });
  const Complex L =
      xform::laplace_numeric(f, freq(0.1), xform::TailMode::constant);
  CHECK(std::abs(L - Complex(10.0)) <= 1e-4);
  const Complex Lt = xform::laplace_numeric(f, freq(0.1), xform::TailMode::none);
  CHECK(std::abs(Lt - (1.0 - std::exp(-2.0)) / 0.1) <= 1e-4);
}

TEST_CASE("catalog registration validates transforms and periods") {
  xform::Catalog cat = xform::Catalog::standard();
  xform::CatalogFunction bad;
  bad.name = "bad_transform";
  bad.time_eval = [](double t) { return std::exp(-t); };
  bad.transform_eval = [](Complex s) { return 2.0 / (s + 1.0); };  // wrong
  CHECK_THROWS(cat.register_entry(bad));

  xform::CatalogFunction badp;
  badp.name = "bad_period";
  badp.time_eval = [](double t) { return std::sin(t); };
  badp.period_T = 3.0;  // not a period of sin
  CHECK_THROWS(cat.register_entry(badp));
}

TEST_CASE("ComplexFreq rejects the closed left half plane") {
  CHECK_THROWS_AS(ComplexFreq(Complex(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(ComplexFreq(Complex(-1.0, 0.0)), std::invalid_argument);
}
