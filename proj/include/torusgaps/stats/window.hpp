#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "torusgaps/error.hpp"

namespace torusgaps {

enum class WindowKind {
  VStyle,  // V in the smoothed statistic; ft_at_zero is the integral over x >= 0
  WStyle,  // W in the smoothed statistic; ft_at_zero is the full integral
  WPlus,   // 1 on [0, 1], 0 outside [-d, 1 + d]
  WMinus,  // 1 on [d, 1 - 4d], 0 outside [0, 1 - 3d]
};

namespace detail {

/// Cumulative distribution of the bump exp(-1/(1 - x^2)) on [-1, 1],
/// normalized numerically. Tabulated once on a uniform grid by Simpson
/// panels and linearly interpolated; exactly 0 below -1 and 1 above 1.
class BumpCdf {
 public:
  static constexpr int kCells = 1 << 14;

  BumpCdf() {
    auto bump = [](double x) { return std::abs(x) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - x * x)); };
    const double h = 2.0 / kCells;
    table_[0] = 0.0;
    for (int i = 0; i < kCells; ++i) {
      const double a = -1.0 + i * h;
      table_[i + 1] = table_[i] + h / 6.0 * (bump(a) + 4.0 * bump(a + h / 2) + bump(a + h));
    }
    const double total = table_[kCells];
    for (auto& v : table_) v /= total;
    table_[kCells] = 1.0;
  }

  double operator()(double u) const noexcept {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double pos = (u + 1.0) * (kCells / 2.0);
    const int i = std::min(static_cast<int>(pos), kCells - 1);
    const double frac = pos - i;
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  std::array<double, kCells + 1> table_{};
};

inline const BumpCdf& bump_cdf() {
  static const BumpCdf cdf;
  return cdf;
}

}  // namespace detail

/// Mollified indicator: 1[edge_lo, edge_hi] convolved with the bump rescaled
/// to [-half_width, half_width]. Equal to 1 on
/// [edge_lo + half_width, edge_hi - half_width] and supported in
/// [edge_lo - half_width, edge_hi + half_width].
class Window {
 public:
  Window(WindowKind kind, double delta, double edge_lo, double edge_hi, double half_width)
      : kind_(kind), delta_(delta), edge_lo_(edge_lo), edge_hi_(edge_hi), half_width_(half_width) {
    const double step_max = delta / 256.0;
    const auto cells = static_cast<std::size_t>(std::ceil((support_hi() - support_lo()) / step_max));
    const double step = (support_hi() - support_lo()) / static_cast<double>(cells);
    samples_.reserve(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double x = i == cells ? support_hi() : support_lo() + step * static_cast<double>(i);
      samples_.emplace_back(x, (*this)(x));
    }
    ft_at_zero_ = integrate_trapezoid(kind == WindowKind::VStyle ? 0.0 : support_lo(), support_hi(), step_max);
  }

  double operator()(double x) const noexcept {
    const auto& cdf = detail::bump_cdf();
    return cdf((x - edge_lo_) / half_width_) - cdf((x - edge_hi_) / half_width_);
  }

  WindowKind kind() const noexcept { return kind_; }
  double delta() const noexcept { return delta_; }
  double support_lo() const noexcept { return edge_lo_ - half_width_; }
  double support_hi() const noexcept { return edge_hi_ + half_width_; }
  double plateau_lo() const noexcept { return edge_lo_ + half_width_; }
  double plateau_hi() const noexcept { return edge_hi_ - half_width_; }

  /// Fourier transform at 0: the integral of the window, restricted to
  /// x >= 0 for VStyle windows.
  double ft_at_zero() const noexcept { return ft_at_zero_; }

  const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }

 private:
  double integrate_trapezoid(double a, double b, double step_max) const {
    const auto cells = static_cast<std::size_t>(std::ceil((b - a) / step_max));
    const double h = (b - a) / static_cast<double>(cells);
    double sum = 0.5 * ((*this)(a) + (*this)(b));
    for (std::size_t i = 1; i < cells; ++i) sum += (*this)(a + h * static_cast<double>(i));
    return sum * h;
  }

  WindowKind kind_;
  double delta_;
  double edge_lo_;
  double edge_hi_;
  double half_width_;
  std::vector<std::pair<double, double>> samples_;
  double ft_at_zero_ = 0.0;
};

/// Admissible window for the given role; 0 < delta < 1/8.
///
/// VStyle/WStyle: indicator of [-delta/8, 1 + delta/8] smoothed over
/// +-delta/16, so the window is >= 1 on [0, 1], and its integral is 1 + delta/4
/// (1 + delta/8 on the half line). WPlus/WMinus place the plateau and support
/// exactly at the prescribed points with smoothing radius delta/2.
inline Window make_window(WindowKind kind, double delta) {
  if (!(delta > 0.0 && delta < 0.125)) throw Error(Errc::BadDelta, "window parameter must lie in (0, 1/8)");
  switch (kind) {
    case WindowKind::VStyle:
    case WindowKind::WStyle:
      return Window(kind, delta, -delta / 8.0, 1.0 + delta / 8.0, delta / 16.0);
    case WindowKind::WPlus:
      return Window(kind, delta, -delta / 2.0, 1.0 + delta / 2.0, delta / 2.0);
    case WindowKind::WMinus:
      return Window(kind, delta, delta / 2.0, 1.0 - 3.5 * delta, delta / 2.0);
  }
  throw Error(Errc::InvalidArgument, "unknown window kind");
}

}  // namespace torusgaps
