#include "pcrange/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pcrange/errors.hpp"

namespace pcrange {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

void require_bessel_arg(double x, const char* what) {
  require_finite(x, what);
  if (x < 0.0) {
    throw DomainError(std::string(what) + ": argument must be non-negative");
  }
}

// Below this the ascending series is used; above it the Hankel expansion,
// whose smallest term near x = 25 is ~1e-21.
constexpr double kSeriesLimit = 25.0;

// Ascending series for I_nu(x), nu in {0, 1}.
double bessel_series(int nu, double x) {
  const double q = 0.25 * x * x;
  double term = nu == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// e^{-x} I_nu(x) from the large-argument expansion
//   1/sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k,
//   a_k = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k).
double bessel_hankel_scaled(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (static_cast<double>(k) * 8.0 * x);
    if (std::abs(term) >= prev) break;  // asymptotic series started diverging
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_scaled(int nu, double x) {
  if (x <= kSeriesLimit) return bessel_series(nu, x) * std::exp(-x);
  return bessel_hankel_scaled(nu, x);
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability outside [0, 1]: " + std::to_string(value));
  }
}

Probability gaussian_q(double x) {
  require_finite(x, "gaussian_q");
  return Probability(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double bessel_i0(double x) {
  require_bessel_arg(x, "bessel_i0");
  if (x <= kSeriesLimit) return bessel_series(0, x);
  return bessel_hankel_scaled(0, x) * std::exp(x);
}

double bessel_i1(double x) {
  require_bessel_arg(x, "bessel_i1");
  if (x <= kSeriesLimit) return bessel_series(1, x);
  return bessel_hankel_scaled(1, x) * std::exp(x);
}

double bessel_i0e(double x) {
  require_bessel_arg(x, "bessel_i0e");
  return bessel_scaled(0, x);
}

double bessel_i1e(double x) {
  require_bessel_arg(x, "bessel_i1e");
  return bessel_scaled(1, x);
}

double bessel_i1_over_i0(double x) {
  require_bessel_arg(x, "bessel_i1_over_i0");
  if (x <= kSeriesLimit) return bessel_series(1, x) / bessel_series(0, x);
  return bessel_hankel_scaled(1, x) / bessel_hankel_scaled(0, x);
}

double inv_x_exp_neg_x(double y) {
  constexpr double inv_e = 0.36787944117144233;
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("inv_x_exp_neg_x: y must be positive");
  }
  if (y > inv_e * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw DomainError("inv_x_exp_neg_x: y exceeds 1/e, no real root on the x >= 1 branch");
  }
  if (y >= inv_e) return 1.0;

  // Work with g(x) = ln x - x - ln y, strictly decreasing for x > 1, so that
  // tiny y never underflows.
  const double log_y = std::log(y);
  auto g = [log_y](double x) { return std::log(x) - x - log_y; };

  // Asymptotic seed: x <- ln(x/y) = ln x - ln y, starting at -ln y.
  double seed = std::max(1.0, -log_y);
  for (int i = 0; i < 4; ++i) seed = std::max(1.0, std::log(seed) - log_y);

  double lo = 1.0;
  double hi = std::max(2.0, 2.0 * seed);
  while (g(hi) > 0.0) hi *= 2.0;
  if (seed > lo && seed < hi) {
    (g(seed) > 0.0 ? lo : hi) = seed;
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
}

}  // namespace pcrange
