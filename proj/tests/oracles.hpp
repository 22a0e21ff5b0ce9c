#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library under test.

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

namespace oracle {

constexpr double pi = std::numbers::pi;
constexpr double c_light = 299792458.0;

template <class F>
double gk(F f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

/// Upper normal tail by direct quadrature of the density.
inline double q_by_quadrature(double x, double upper = 40.0) {
  return gk([](double y) { return std::exp(-0.5 * y * y) / std::sqrt(2.0 * pi); }, x, upper);
}

inline double q_boost(double x) {
  return boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), x));
}

/// Ascending series sum (x/2)^{2k}/(k!)^2 in long double.
inline double i0_series(double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = 0.25L * x * x;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term < 1e-21L * sum) break;
  }
  return static_cast<double>(sum);
}

inline double i0_boost(double x) { return boost::math::cyl_bessel_i(0, x); }
inline double i1_boost(double x) { return boost::math::cyl_bessel_i(1, x); }

/// Plain bisection of x e^{-x} - y on [1, 50].
inline double f_bisection(double y) {
  long double lo = 1.0L, hi = 50.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (mid * std::exp(-mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

inline double f_lambert(double y) { return -boost::math::lambert_wm1(-y); }

/// 2(1 - e^{-dw^2 tau^2/2}).
inline double gaussian_gamma(double dw, double tau) { return 2.0 * (1.0 - std::exp(-0.5 * dw * dw * tau * tau)); }

/// sqrt(int_0^dtau t (1 - t/dtau) pe(t) dt) by Boost Gauss-Kronrod with
/// explicit splitting near zero.
template <class Pe>
double zzb_reference(double dtau, Pe pe, double scale) {
  auto g = [&](double t) { return t * (1.0 - t / dtau) * pe(t); };
  double total = 0.0;
  double a = 0.0;
  for (double b = scale * 1e-3; a < dtau; b *= 2.0) {
    const double hi = std::min(b, dtau);
    total += gk(g, a, hi, 1e-12);
    a = hi;
  }
  return std::sqrt(total);
}

inline double planck(double omega, double temp) {
  const double hbar = 1.054571817e-34, kb = 1.380649e-23;
  return 1.0 / (std::exp(hbar * omega / (kb * temp)) - 1.0);
}

}  // namespace oracle
