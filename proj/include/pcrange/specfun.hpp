#pragma once

// Scalar special functions used by every bound in the library.

namespace pcrange {

/// A probability in [0, 1]. Constructing one outside that range throws
/// DomainError; converts implicitly to double.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }  // NOLINT(google-explicit-constructor)

 private:
  double value_ = 0.0;
};

/// Standard normal upper tail, Q(x) = P[N(0,1) > x].
Probability gaussian_q(double x);

/// Modified Bessel functions of the first kind, orders 0 and 1, for x >= 0.
/// Overflow to +inf above x ~ 713; use the scaled forms there.
double bessel_i0(double x);
double bessel_i1(double x);

/// Exponentially scaled forms e^{-x} I_n(x).
double bessel_i0e(double x);
double bessel_i1e(double x);

/// I1(x)/I0(x), finite for any x >= 0.
double bessel_i1_over_i0(double x);

/// Root x >= 1 of x e^{-x} = y for 0 < y <= 1/e (the upper branch, i.e.
/// -W_{-1}(-y)). Small y gives large x.
double inv_x_exp_neg_x(double y);

}  // namespace pcrange
