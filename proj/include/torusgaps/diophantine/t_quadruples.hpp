#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "torusgaps/diophantine/octuple.hpp"

namespace torusgaps {

struct TQuadResult {
  std::vector<TQuad> quads;
  std::uint64_t count = 0;
};

namespace detail {

// Sign of x - bound where x = alpha * p - r with integer p, r; decided in double
// unless x lies within 4 ulp of `bound`, then redone in long double.
inline int guarded_compare(double alpha, std::int64_t p, std::int64_t r, double bound) {
  const double x = alpha * static_cast<double>(p) - static_cast<double>(r);
  const double scale = std::abs(alpha * static_cast<double>(p)) + std::abs(static_cast<double>(r)) + std::abs(bound);
  const double guard = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  if (x < bound - guard) return -1;
  if (x > bound + guard) return 1;
  const long double xl = static_cast<long double>(alpha) * static_cast<long double>(p) - static_cast<long double>(r);
  const long double bl = bound;
  return xl < bl ? -1 : (xl > bl ? 1 : 0);
}

}  // namespace detail

/// All t-quadruples for the rectangular form q(m, n) = alpha m^2 + n^2 with
///   t1 = t2 (mod 2), t3 = t4 (mod 2), (t1, t3) != (0, 0),
///   t2 > |t1|, t4 >= |t3|,
///   0 <= alpha t1 t2 - t3 t4 <= 4 sqrt(alpha) Delta / pi,
///   alpha ((t1 + t2)/2)^2 + ((t4 - t3)/2)^2 <= 4 sqrt(alpha) N / pi,
///   alpha ((t2 - t1)/2)^2 + ((t3 + t4)/2)^2 <= 4 sqrt(alpha) N / pi.
/// These are in bijection with ordered pairs of distinct spectral indices whose
/// eigenvalue difference lies in [0, Delta].
inline TQuadResult t_quadruples_rect(double alpha, double n, double delta, bool keep_list = true,
                                     std::uint64_t budget = 1'000'000'000) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(Errc::NonPositive, "alpha must be positive");
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::InvalidArgument, "N must be positive");
  TQuadResult result;
  if (!(delta >= 0.0)) return result;

  const double sa = std::sqrt(alpha);
  const double band = 4.0 * sa * delta / std::numbers::pi;
  const double radius = 4.0 * sa * n / std::numbers::pi;  // bound on alpha m^2 + n^2
  const auto m_max = static_cast<std::int64_t>(std::floor(std::sqrt(radius / alpha))) + 1;
  const auto k_max = static_cast<std::int64_t>(std::floor(std::sqrt(radius))) + 1;
  // Work estimate: (t1, t2) pairs times the t3 range.
  const double work = 2.0 * static_cast<double>(m_max) * static_cast<double>(m_max) * (2.0 * static_cast<double>(k_max) + 1.0);
  if (work > static_cast<double>(budget)) throw Error(Errc::BudgetExceeded, "t-quadruple search exceeds budget");
  if (2 * m_max > 2000 || 2 * k_max > 2000) {
    throw Error(Errc::BudgetExceeded, "t-quadruple entries exceed the exact comparison range");
  }

  auto inside = [&](std::int64_t m, std::int64_t k) {
    return m > 0 && k >= 0 && detail::guarded_compare(alpha, m * m, -k * k, radius) <= 0;
  };

  for (std::int64_t t2 = 1; t2 <= 2 * m_max; ++t2) {
    for (std::int64_t t1 = -(t2 - 1); t1 <= t2 - 1; ++t1) {
      if (((t1 - t2) & 1) != 0) continue;
      const std::int64_t m1 = (t1 + t2) / 2;
      const std::int64_t m2 = (t2 - t1) / 2;
      if (!inside(m1, 0) || !inside(m2, 0)) continue;
      const double at = alpha * static_cast<double>(t1 * t2);
      for (std::int64_t t3 = -2 * k_max; t3 <= 2 * k_max; ++t3) {
        if (t1 == 0 && t3 == 0) continue;
        // Candidate t4 range from t3 t4 in [at - band, at], widened by one.
        std::int64_t lo = std::abs(t3);
        std::int64_t hi = 2 * k_max;
        if (t3 != 0) {
          const double r1 = (at - band) / static_cast<double>(t3);
          const double r2 = at / static_cast<double>(t3);
          lo = std::max(lo, static_cast<std::int64_t>(std::floor(std::min(r1, r2))) - 1);
          hi = std::min(hi, static_cast<std::int64_t>(std::ceil(std::max(r1, r2))) + 1);
        }
        for (std::int64_t t4 = lo; t4 <= hi; ++t4) {
          if (((t3 - t4) & 1) != 0) continue;
          const std::int64_t p = t1 * t2, r = t3 * t4;
          if (detail::guarded_compare(alpha, p, r, 0.0) < 0) continue;
          if (detail::guarded_compare(alpha, p, r, band) > 0) continue;
          if (!inside(m1, (t4 - t3) / 2) || !inside(m2, (t3 + t4) / 2)) continue;
          ++result.count;
          if (keep_list) result.quads.push_back({t1, t2, t3, t4});
        }
      }
    }
  }
  return result;
}

}  // namespace torusgaps
