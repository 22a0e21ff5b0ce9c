#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/quadrature.hpp"

using namespace pcrange;

TEST_CASE("polynomials and smooth functions integrate to tolerance") {
  auto r = integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(20.0 - 8.0 + 4.0).epsilon(1e-13));

  r = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
  CHECK(r.value == doctest::Approx(std::sqrt(oracle::pi)).epsilon(1e-13));

  r = integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, {1e-12, 0.0, 4000});
  CHECK(r.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-11));
}

TEST_CASE("endpoint singularities are handled by subdivision") {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 0.0, 4000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("agreement with an independent Gauss-Kronrod implementation") {
  auto f = [](double x) { return std::log1p(x) * std::exp(-0.3 * x) * std::sin(x); };
  CHECK(integrate(f, 0.0, 20.0).value == doctest::Approx(oracle::gk(f, 0.0, 20.0)).epsilon(1e-11));
}

TEST_CASE("mesh-seeded integration resolves a narrow spike near zero") {
  const double w = 1e-7;
  auto spike = [w](double x) { return x * std::exp(-x / w); };
  const auto mesh = log_mesh(1e-12, 1.0, 80);
  CHECK(mesh.front() == 0.0);
  CHECK(mesh[1] == doctest::Approx(1e-12));
  CHECK(mesh.back() == doctest::Approx(1.0));
  const auto r = integrate_mesh(spike, mesh, {1e-10, 0.0, 4000});
  CHECK(r.value == doctest::Approx(w * w).epsilon(1e-9));
}

TEST_CASE("failure modes") {
  const auto r = integrate([](double x) { return std::sin(1.0 / x); }, 1e-8, 1.0, {1e-14, 0.0, 5});
  CHECK_FALSE(r.converged);
  CHECK(r.intervals <= 5);
  CHECK_THROWS_AS(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                  NumericError);
  const double bad[] = {0.0, 0.0};
  CHECK_THROWS_AS(integrate_mesh([](double) { return 1.0; }, bad), DomainError);
  CHECK_THROWS_AS(log_mesh(1.0, 0.5, 10), DomainError);
}
