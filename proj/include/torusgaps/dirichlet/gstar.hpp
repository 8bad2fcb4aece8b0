#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "torusgaps/dirichlet/polynomial.hpp"

namespace torusgaps {

/// exp(w) - 1 without cancellation for small |w|.
inline cplx complex_expm1(cplx w) {
  const double x = w.real(), y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

inline constexpr double kGstarSeriesRadius = 1e-8;

/// G*(z, D1, D2) = (D1^z - D2^z) / z, continued by log(D1/D2) at z = 0.
inline cplx gstar(cplx z, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error(Errc::NonPositive, "D1 and D2 must be positive");
  const double l1 = std::log(d1), l2 = std::log(d2);
  if (std::abs(z) < kGstarSeriesRadius) {
    // (L1 - L2) (1 + z (L1 + L2)/2 + z^2 (L1^2 + L1 L2 + L2^2)/6 + z^3 (L1 + L2)(L1^2 + L2^2)/24)
    const double s1 = (l1 + l2) / 2.0;
    const double s2 = (l1 * l1 + l1 * l2 + l2 * l2) / 6.0;
    const double s3 = (l1 + l2) * (l1 * l1 + l2 * l2) / 24.0;
    return (l1 - l2) * (1.0 + z * (s1 + z * (s2 + z * s3)));
  }
  return std::exp(z * l2) * complex_expm1(z * (l1 - l2)) / z;
}

inline cplx gstar(double z_real, double z_imag, double d1, double d2) { return gstar(cplx{z_real, z_imag}, d1, d2); }

struct PartialSummationPoint {
  double y;
  double abs_g;
  double abs_gstar;
  double error;  // |G(y, (D, D']) - G*(1 - 2 pi i y, D', D)|
  double bound;  // 2 + 2 pi |y| log(D'/D)
};

/// Compares G(y, D) = sum over D < t <= D' of t^(-2 pi i y) with the integral
/// G*(1 - 2 pi i y, D', D); by partial summation their difference is at most
/// 2 + 2 pi |y| log(D'/D).
inline PartialSummationPoint partial_summation_point(double y, std::uint64_t d, std::uint64_t d_prime) {
  const cplx g = evaluate(unit_spec(d, d_prime), y);
  const cplx gs = gstar(cplx{1.0, -2.0 * std::numbers::pi * y}, static_cast<double>(d_prime), static_cast<double>(d));
  const double bound =
      2.0 + 2.0 * std::numbers::pi * std::abs(y) * std::log(static_cast<double>(d_prime) / static_cast<double>(d));
  return {y, std::abs(g), std::abs(gs), std::abs(g - gs), bound};
}

}  // namespace torusgaps
