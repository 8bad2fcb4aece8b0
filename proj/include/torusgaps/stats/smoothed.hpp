#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <vector>

#include "torusgaps/core/form.hpp"
#include "torusgaps/stats/window.hpp"

namespace torusgaps {

/// Anything usable as a compactly supported weight in the smoothed statistic.
template <typename F>
concept CompactWindow = requires(const F& f, double x) {
  { f(x) } -> std::convertible_to<double>;
  { f.support_lo() } -> std::convertible_to<double>;
  { f.support_hi() } -> std::convertible_to<double>;
};

struct LatticePoint {
  std::int64_t x;
  std::int64_t y;
  double value;  // q(x, y) / D(alpha)
};

/// Every (x, y) in Z^2 with q(x, y)/D(alpha) <= bound, sorted by value.
/// Includes the origin.
inline std::vector<LatticePoint> lattice_points_in_ellipse(const ReducedForm& form, double bound,
                                                          std::uint64_t budget = 200'000'000) {
  const double d = discriminant_scale(form);
  const double disc = form.discriminant();
  const double x_bound = bound * d;
  const double a2 = form.a2(), a3 = form.a3();
  // Full-lattice Weyl count is about 2 * bound.
  if (2.0 * bound + 8.0 * std::sqrt(bound + 1.0) + 16.0 > static_cast<double>(budget)) {
    throw Error(Errc::BudgetExceeded, "ellipse holds more lattice points than the budget");
  }
  const auto m_max = static_cast<std::int64_t>(std::floor(std::sqrt(4.0 * a3 * x_bound / disc))) + 1;
  std::vector<LatticePoint> points;
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double root = std::sqrt(std::max(4.0 * a3 * x_bound - md * md * disc, 0.0));
    const auto n_lo = static_cast<std::int64_t>(std::floor((-a2 * md - root) / (2.0 * a3))) - 1;
    const auto n_hi = static_cast<std::int64_t>(std::ceil((-a2 * md + root) / (2.0 * a3))) + 1;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const double v = form.q(md, static_cast<double>(n)) / d;
      if (v <= bound) points.push_back({m, n, v});
    }
  }
  std::sort(points.begin(), points.end(), [](const LatticePoint& p, const LatticePoint& q) {
    if (p.value != q.value) return p.value < q.value;
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  });
  return points;
}

/// G_alpha(M, T) = 1/4 sum over (x1,y1) != +-(x2,y2) of
///   W(T (q(x1,y1) - q(x2,y2)) / D) V(q(x1,y1) / (M^2 D)).
///
/// Exact finite sum: lattice points are enumerated once up to the V-support
/// (plus the W-band overhang), sorted by normalized value, and for each
/// first point the band of second points with nonzero W is swept.
template <CompactWindow VWin, CompactWindow WWin>
double smoothed_pair_statistic(const ReducedForm& form, double m, double t, const VWin& v_window,
                               const WWin& w_window, std::uint64_t budget = 200'000'000) {
  if (!(m >= 2.0) || !(t >= 1.0) || !std::isfinite(m) || !std::isfinite(t)) {
    throw Error(Errc::InvalidArgument, "smoothed statistic needs M >= 2 and T >= 1");
  }
  const double m2 = m * m;
  const double v_hi = v_window.support_hi();
  const double w_lo = w_window.support_lo();
  const double w_hi = w_window.support_hi();
  if (v_hi < 0.0) return 0.0;
  // Second points satisfy value2 = value1 - u/T with u in supp W.
  const double bound = m2 * v_hi + std::max(0.0, -w_lo) / t;
  const auto points = lattice_points_in_ellipse(form, bound, budget);

  long double total = 0.0L;
  const std::size_t n = points.size();
  std::size_t band_lo = 0;  // first index with value >= value1 - w_hi / t
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p1 = points[i];
    const double v_weight = v_window(p1.value / m2);
    if (v_weight == 0.0) continue;
    const double lower = p1.value - w_hi / t;
    const double upper = p1.value - w_lo / t;
    while (band_lo < n && points[band_lo].value < lower) ++band_lo;
    long double inner = 0.0L;
    for (std::size_t j = band_lo; j < n && points[j].value <= upper; ++j) {
      const auto& p2 = points[j];
      if ((p2.x == p1.x && p2.y == p1.y) || (p2.x == -p1.x && p2.y == -p1.y)) continue;
      inner += w_window(t * (p1.value - p2.value));
    }
    total += inner * v_weight;
  }
  return static_cast<double>(total / 4.0L);
}

/// V*^(0) W^(0) M^2 / T, the main term of G_alpha(M, T).
inline double smoothed_main_term(const Window& v_window, const Window& w_window, double m, double t) {
  return v_window.ft_at_zero() * w_window.ft_at_zero() * m * m / t;
}

}  // namespace torusgaps
