#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pcrange {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature over [a, b]. The
/// interval with the largest error estimate is bisected until
/// error <= max(abs_tol, rel_tol * |value|) or max_intervals is reached; in
/// the latter case the result is returned with converged = false.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// As integrate(), but seeded with the panels delimited by consecutive
/// entries of `breakpoints` (strictly increasing, at least two entries).
QuadratureResult integrate_mesh(const std::function<double(double)>& f,
                                std::span<const double> breakpoints,
                                const QuadratureOptions& options = {});

/// Log-spaced mesh {0, lo, ..., hi}: `panels` geometric panels on [lo, hi]
/// preceded by [0, lo]. Requires 0 < lo < hi.
std::vector<double> log_mesh(double lo, double hi, std::size_t panels);

}  // namespace pcrange
