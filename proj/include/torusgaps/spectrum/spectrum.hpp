#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torusgaps/core/form.hpp"
#include "torusgaps/error.hpp"

namespace torusgaps {

/// Sorted, desymmetrized, unit-mean-spacing eigenvalues Lambda_j <= cutoff.
///
/// Immutable. The constructor enforces the range and ordering invariants, so
/// a Spectrum read from disk is as trustworthy as a freshly enumerated one.
class Spectrum {
 public:
  Spectrum(ReducedForm form, double cutoff, std::vector<double> values)
      : form_(form), cutoff_(cutoff), values_(std::move(values)) {
    if (!(cutoff_ > 0.0) || !std::isfinite(cutoff_)) {
      throw Error(Errc::InvalidArgument, "spectrum cutoff must be positive and finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!(v > 0.0) || v > cutoff_) {
        throw Error(Errc::InvalidArgument, "spectrum value outside (0, cutoff]");
      }
      if (i > 0 && v < values_[i - 1]) {
        throw Error(Errc::InvalidArgument, "spectrum values are not sorted");
      }
    }
  }

  const ReducedForm& form() const noexcept { return form_; }
  double cutoff() const noexcept { return cutoff_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t count() const noexcept { return values_.size(); }

  /// Number of values <= n.
  std::size_t count_up_to(double n) const {
    return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), n) - values_.begin());
  }

  /// The spectrum of the same form with the smaller cutoff `n`.
  Spectrum truncated(double n) const {
    if (n > cutoff_) throw Error(Errc::CutoffExceedsSpectrum, "cannot extend a spectrum by truncation");
    return Spectrum(form_, n, std::vector<double>(values_.begin(), values_.begin() + count_up_to(n)));
  }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  ReducedForm form_;
  double cutoff_;
  std::vector<double> values_;
};

struct EnumerationOptions {
  std::uint64_t memory_budget = 200'000'000;  // maximum number of stored values
};

/// pi / (4 sqrt(a1 a3)): the rectangular normalization constant.
inline double rectangular_scale(const ReducedForm& form) {
  return std::numbers::pi / (4.0 * std::sqrt(form.a1() * form.a3()));
}

namespace detail {

inline double normalized_value(const ReducedForm& form, double scale_or_d, std::int64_t m, std::int64_t n) {
  const double q = form.q(static_cast<double>(m), static_cast<double>(n));
  return form.symmetry_class() == SymmetryClass::Generic ? q / scale_or_d : scale_or_d * q;
}

inline double normalizer(const ReducedForm& form) {
  return form.symmetry_class() == SymmetryClass::Generic ? discriminant_scale(form) : rectangular_scale(form);
}

inline void check_cutoff(double n, const EnumerationOptions& opts) {
  if (!std::isfinite(n) || !(n > 0.0)) throw Error(Errc::InvalidArgument, "cutoff N must be positive");
  // Weyl: about N values, plus a boundary term of order sqrt(N).
  const double projected = n + 4.0 * std::sqrt(n) + 16.0;
  if (projected > static_cast<double>(opts.memory_budget)) {
    throw Error(Errc::CutoffTooLarge, "projected spectrum size exceeds the memory budget");
  }
}

}  // namespace detail

/// Normalized eigenvalue of the index pair (m, n).
///
/// Generic: q(m,n)/D(alpha) for m > 0, or m = 0 and n > 0.
/// Rectangular: pi q(m,n) / (4 sqrt(a1 a3)) for m > 0 and n >= 0.
inline double eigenvalue(const ReducedForm& form, std::int64_t m, std::int64_t n) {
  if (form.symmetry_class() == SymmetryClass::Generic) {
    if (!(m > 0 || (m == 0 && n > 0))) {
      throw Error(Errc::IndexOutOfFundamentalDomain, "generic index set is m > 0 or (m = 0, n > 0)");
    }
  } else if (!(m > 0 && n >= 0)) {
    throw Error(Errc::IndexOutOfFundamentalDomain, "rectangular index set is m > 0, n >= 0");
  }
  return detail::normalized_value(form, detail::normalizer(form), m, n);
}

/// All Lambda_j <= n of a generic form, with multiplicity, sorted.
///
/// For each m the admissible n form an interval given by the quadratic
/// formula; the interval is widened by one on each side and every candidate
/// is re-checked against the computed value, so the result is exactly the
/// set {eigenvalue(form, m, n) <= cutoff}.
inline Spectrum enumerate_generic(const ReducedForm& form, double cutoff, const EnumerationOptions& opts = {}) {
  if (form.symmetry_class() != SymmetryClass::Generic) {
    throw Error(Errc::WrongSymmetryClass, "enumerate_generic needs a generic form");
  }
  detail::check_cutoff(cutoff, opts);
  const double d = discriminant_scale(form);
  const double disc = form.discriminant();
  const double x = cutoff * d;  // bound on q
  const double a2 = form.a2(), a3 = form.a3();
  const auto m_max = static_cast<std::int64_t>(std::floor(std::sqrt(4.0 * a3 * x / disc))) + 1;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(cutoff + 4.0 * std::sqrt(cutoff) + 16.0));
  // m_max is one past the last row that can meet the ellipse.
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double root_arg = 4.0 * a3 * x - md * md * disc;
    const double root = std::sqrt(std::max(root_arg, 0.0));
    auto n_lo = static_cast<std::int64_t>(std::floor((-a2 * md - root) / (2.0 * a3))) - 1;
    auto n_hi = static_cast<std::int64_t>(std::ceil((-a2 * md + root) / (2.0 * a3))) + 1;
    if (m == 0) n_lo = std::max<std::int64_t>(n_lo, 1);
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const double v = detail::normalized_value(form, d, m, n);
      if (v <= cutoff) values.push_back(v);
    }
    if (values.size() > opts.memory_budget) {
      throw Error(Errc::CutoffTooLarge, "spectrum exceeds the memory budget");
    }
  }
  std::sort(values.begin(), values.end());
  return Spectrum(form, cutoff, std::move(values));
}

/// All Lambda_j <= n of a rectangular form over m > 0, n >= 0.
inline Spectrum enumerate_rectangular(const ReducedForm& form, double cutoff, const EnumerationOptions& opts = {}) {
  if (form.symmetry_class() != SymmetryClass::Rectangular) {
    throw Error(Errc::WrongSymmetryClass, "enumerate_rectangular needs a rectangular form");
  }
  detail::check_cutoff(cutoff, opts);
  const double c = rectangular_scale(form);
  const double x = cutoff / c;  // bound on q
  const double a1 = form.a1(), a3 = form.a3();
  const auto m_max = static_cast<std::int64_t>(std::floor(std::sqrt(x / a1))) + 1;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(cutoff + 4.0 * std::sqrt(cutoff) + 16.0));
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double rest = std::max(x - a1 * md * md, 0.0);
    const auto n_hi = static_cast<std::int64_t>(std::ceil(std::sqrt(rest / a3))) + 1;
    for (std::int64_t n = 0; n <= n_hi; ++n) {
      const double v = detail::normalized_value(form, c, m, n);
      if (v <= cutoff) values.push_back(v);
    }
    if (values.size() > opts.memory_budget) {
      throw Error(Errc::CutoffTooLarge, "spectrum exceeds the memory budget");
    }
  }
  std::sort(values.begin(), values.end());
  return Spectrum(form, cutoff, std::move(values));
}

inline Spectrum enumerate(const ReducedForm& form, double cutoff, const EnumerationOptions& opts = {}) {
  return form.symmetry_class() == SymmetryClass::Generic ? enumerate_generic(form, cutoff, opts)
                                                         : enumerate_rectangular(form, cutoff, opts);
}

/// Generous Weyl-law tolerance 20 (1 + a3/D(alpha)) sqrt(N) on |count - N|.
inline double weyl_tolerance(const ReducedForm& form, double cutoff) {
  return 20.0 * (1.0 + form.a3() / discriminant_scale(form)) * std::sqrt(cutoff);
}

}  // namespace torusgaps
