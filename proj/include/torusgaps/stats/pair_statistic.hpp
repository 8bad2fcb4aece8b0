#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "torusgaps/spectrum/spectrum.hpp"

namespace torusgaps {

enum class Bounds {
  Closed,    // [lo, hi]
  LeftOpen,  // (lo, hi]
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  Bounds bounds = Bounds::Closed;

  bool empty() const noexcept { return lo > hi || (bounds == Bounds::LeftOpen && lo == hi); }
  bool contains(double x) const noexcept {
    return (bounds == Bounds::Closed ? x >= lo : x > lo) && x <= hi;
  }
};

struct PairReport {
  ReducedForm form;
  double cutoff;
  Interval interval;
  std::uint64_t raw_pairs;
  double statistic;  // raw_pairs / cutoff
};

/// Number of ordered pairs (j, k), j != k, with values[j] - values[k] in the
/// interval. `values` must be sorted.
///
/// Two-pointer sweep: for fixed k the difference values[j] - values[k] is
/// nondecreasing in j (rounded subtraction is monotone), and for fixed j it is
/// nonincreasing in k, so both window ends only move forward. Membership is
/// decided on the rounded difference itself, which makes the count agree
/// exactly with a double loop over all pairs.
inline std::uint64_t count_ordered_pairs(std::span<const double> values, const Interval& interval) {
  if (interval.empty() || values.empty()) return 0;
  const std::size_t n = values.size();
  auto below_lo = [&](double diff) { return interval.bounds == Bounds::Closed ? diff < interval.lo : diff <= interval.lo; };
  std::uint64_t total = 0;
  std::size_t left = 0;   // first j with diff >= lo (or > lo)
  std::size_t right = 0;  // first j with diff > hi
  for (std::size_t k = 0; k < n; ++k) {
    const double vk = values[k];
    while (left < n && below_lo(values[left] - vk)) ++left;
    while (right < n && values[right] - vk <= interval.hi) ++right;
    if (right > left) {
      total += right - left;
      if (k >= left && k < right) --total;  // j == k
    }
  }
  return total;
}

/// P(alpha, N, I) over the values <= n.
inline PairReport pair_statistic(const Spectrum& spectrum, double n, const Interval& interval) {
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw Error(Errc::InvalidArgument, "interval endpoints must be finite");
  }
  if (!(n > 0.0)) throw Error(Errc::InvalidArgument, "N must be positive");
  if (n > spectrum.cutoff()) {
    throw Error(Errc::CutoffExceedsSpectrum, "N exceeds the cutoff of the enumerated spectrum");
  }
  const auto values = spectrum.values().first(spectrum.count_up_to(n));
  const auto raw = count_ordered_pairs(values, interval);
  return PairReport{spectrum.form(), n, interval, raw, static_cast<double>(raw) / n};
}

}  // namespace torusgaps
