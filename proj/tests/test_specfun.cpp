#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/specfun.hpp"

using namespace pcrange;

TEST_CASE("Probability rejects values outside [0, 1]") {
  CHECK(Probability(0.25).value() == 0.25);
  CHECK_THROWS_AS(Probability(-1e-3), DomainError);
  CHECK_THROWS_AS(Probability(1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(Probability(std::nan("")), DomainError);
}

TEST_CASE("gaussian_q examples") {
  CHECK(gaussian_q(0.0).value() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gaussian_q(2.0).value() == doctest::Approx(oracle::q_by_quadrature(2.0)).epsilon(1e-12));
  CHECK(gaussian_q(2.0).value() == doctest::Approx(0.02275013).epsilon(1e-7));
  CHECK(gaussian_q(-8.0).value() == doctest::Approx(1.0 - gaussian_q(8.0).value()).epsilon(1e-15));
  CHECK_THROWS_AS(gaussian_q(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(gaussian_q(std::nan("")), DomainError);
}

TEST_CASE("gaussian_q relative accuracy and underflow tail") {
  for (double x = -8.0; x <= 8.0; x += 0.0625) {
    const double ref = oracle::q_boost(x);
    CHECK(std::abs(gaussian_q(x).value() - ref) <= 1e-12 * ref);
  }
  for (double x : {8.5, 12.0, 20.0, 37.0}) {
    const double ref = oracle::q_boost(x);
    CHECK(std::abs(gaussian_q(x).value() - ref) <= 1e-12 * ref);
  }
  for (double x : {38.5, 40.0, 50.0}) {
    CHECK(oracle::q_boost(x) <= 1e-300);
    CHECK(std::abs(gaussian_q(x).value() - oracle::q_boost(x)) <= 1e-300);
  }
}

TEST_CASE("Q(x) <= exp(-x^2/2)/2 for x >= 0") {
  for (double x = 0.0; x <= 38.0; x += 0.01) {
    CHECK(gaussian_q(x).value() <= 0.5 * std::exp(-0.5 * x * x) * (1.0 + 1e-15));
  }
}

TEST_CASE("bessel I0 and I1") {
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK(bessel_i1(0.0) == 0.0);
  CHECK(bessel_i0(1.0) == doctest::Approx(oracle::i0_series(1.0)).epsilon(1e-14));
  CHECK(bessel_i0(1.0) == doctest::Approx(1.26606588).epsilon(1e-8));
  for (double x : {1e-6, 0.1, 0.5, 2.0, 7.5, 15.0, 24.9, 25.1, 40.0, 100.0, 300.0, 700.0}) {
    INFO("x = " << x);
    CHECK(bessel_i0(x) == doctest::Approx(oracle::i0_boost(x)).epsilon(1e-10));
    CHECK(bessel_i1(x) == doctest::Approx(oracle::i1_boost(x)).epsilon(1e-10));
    CHECK(bessel_i0e(x) == doctest::Approx(oracle::i0_boost(x) * std::exp(-x)).epsilon(1e-10));
    CHECK(bessel_i1e(x) == doctest::Approx(oracle::i1_boost(x) * std::exp(-x)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_i1(std::nan("")), DomainError);
}

TEST_CASE("I1/I0 stays finite, in [0, 1) and increasing up to 1e6") {
  CHECK(std::abs(bessel_i1_over_i0(1e5) - 1.0) <= 1e-5);
  double prev = -1.0;
  for (double x = 0.0; x <= 1e6; x = x < 1.0 ? x + 0.05 : x * 1.1) {
    const double r = bessel_i1_over_i0(x);
    REQUIRE(std::isfinite(r));
    CHECK(r >= 0.0);
    CHECK(r < 1.0);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(bessel_i1_over_i0(3.0) == doctest::Approx(oracle::i1_boost(3.0) / oracle::i0_boost(3.0)).epsilon(1e-12));
}

TEST_CASE("inv_x_exp_neg_x examples") {
  CHECK(inv_x_exp_neg_x(1.0 / std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(inv_x_exp_neg_x(1.36783e-4) == doctest::Approx(oracle::f_bisection(1.36783e-4)).epsilon(1e-12));
  CHECK(inv_x_exp_neg_x(1.36783e-4) == doctest::Approx(11.324).epsilon(1e-4));
  CHECK(inv_x_exp_neg_x(0.2) == doctest::Approx(oracle::f_bisection(0.2)).epsilon(1e-12));
  CHECK(inv_x_exp_neg_x(0.2) == doctest::Approx(2.54264).epsilon(1e-5));
  CHECK(inv_x_exp_neg_x(2.9930 * std::exp(-2.9930)) == doctest::Approx(2.9930).epsilon(1e-10));
  CHECK_THROWS_AS(inv_x_exp_neg_x(0.0), DomainError);
  CHECK_THROWS_AS(inv_x_exp_neg_x(-0.1), DomainError);
  CHECK_THROWS_AS(inv_x_exp_neg_x(0.37), DomainError);
}

TEST_CASE("inv_x_exp_neg_x residual, round trip, Lambert oracle and monotonicity") {
  for (double x = 1.0; x <= 50.0; x += 0.25) {
    const double y = x * std::exp(-x);
    const double got = inv_x_exp_neg_x(y);
    if (x > 1.0) CHECK(got == doctest::Approx(x).epsilon(1e-10));
    CHECK(std::abs(got * std::exp(-got) - y) <= 1e-12 * y);
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logy(std::log(1e-300), std::log(0.36));
  for (int i = 0; i < 500; ++i) {
    const double y = std::exp(logy(rng));
    CHECK(inv_x_exp_neg_x(y) == doctest::Approx(oracle::f_lambert(y)).epsilon(1e-12));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double y = 1e-12; y < 1.0 / std::exp(1.0); y *= 1.05) {
    const double x = inv_x_exp_neg_x(y);
    CHECK(x < prev);
    prev = x;
  }
}
