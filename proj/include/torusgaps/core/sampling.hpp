#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "torusgaps/core/form.hpp"
#include "torusgaps/core/rng.hpp"
#include "torusgaps/error.hpp"

namespace torusgaps {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
};

/// Axis-aligned box in (a1, a2, a3).
struct GenericBox {
  Range a1;
  Range a2;
  Range a3;
};

/// Axis-aligned box in (a1, a3) for rectangular tori.
struct RectangularBox {
  Range a1;
  Range a3;
};

struct ModuliSample {
  ReducedForm form;
  double weight;  // measure density at `form`
  std::vector<std::uint64_t> seed_path;  // {seed, stream, draws consumed}
};

namespace detail {

inline void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.hi < r.lo) {
    throw Error(Errc::InvalidArgument, std::string("bad box range for ") + name);
  }
}

inline bool in_reduced_cone(double a1, double a2, double a3) {
  return 0.0 <= a2 && a2 <= a1 && a1 <= a3 && 4.0 * a1 * a3 - a2 * a2 > 0.0;
}

}  // namespace detail

/// Upper bound on the acceptance-loop length before giving up; an acceptance
/// rate below 1e-6 is reported as RejectionOverflow.
inline constexpr std::uint64_t kMaxRejectionAttempts = 10'000'000;

/// Draws a form from d_hyp restricted to `box` (intersected with the reduced
/// cone) by rejection against a uniform envelope scaled by the density's
/// box maximum, which sits at the corner (a1.lo, max|a2|, a3.lo).
inline ModuliSample sample_generic(RngState state, const GenericBox& box) {
  detail::check_range(box.a1, "a1");
  detail::check_range(box.a2, "a2");
  detail::check_range(box.a3, "a3");
  if (box.a1.width() <= 0.0 || box.a2.width() <= 0.0 || box.a3.width() <= 0.0) {
    throw Error(Errc::EmptyBox, "generic box has zero volume");
  }
  const double a2_far = std::max(std::abs(box.a2.lo), std::abs(box.a2.hi));
  const double a2_near = (box.a2.lo <= 0.0 && box.a2.hi >= 0.0) ? 0.0
                                                                 : std::min(std::abs(box.a2.lo), std::abs(box.a2.hi));
  const double disc_min = 4.0 * box.a1.lo * box.a3.lo - a2_far * a2_far;
  const double disc_max = 4.0 * box.a1.hi * box.a3.hi - a2_near * a2_near;
  if (disc_max <= 0.0) {
    throw Error(Errc::EmptyBox, "box contains no positive definite forms");
  }
  if (disc_min <= 0.0) {
    throw Error(Errc::RejectionOverflow, "density is unbounded on the box (touches 4*a1*a3 = a2^2)");
  }
  const double envelope = 1.0 / (disc_min * std::sqrt(disc_min));

  RngCursor cursor(state);
  for (std::uint64_t attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    const double a1 = box.a1.lo + box.a1.width() * cursor.next_uniform();
    const double a2 = box.a2.lo + box.a2.width() * cursor.next_uniform();
    const double a3 = box.a3.lo + box.a3.width() * cursor.next_uniform();
    const double u = cursor.next_uniform();
    if (!detail::in_reduced_cone(a1, a2, a3)) continue;
    const double d = 4.0 * a1 * a3 - a2 * a2;
    const double density = 1.0 / (d * std::sqrt(d));
    if (u * envelope < density) {
      auto form = validate_form(a1, a2, a3, SymmetryClass::Generic);
      return ModuliSample{form, density, {state.seed, state.stream, cursor.consumed()}};
    }
  }
  throw Error(Errc::RejectionOverflow, "acceptance rate below 1e-6");
}

/// Draws (a1, a3) from da1 da3 / (a1 a3) on `box`: log-uniform in each
/// coordinate, exact without rejection.
inline ModuliSample sample_rectangular(RngState state, const RectangularBox& box) {
  detail::check_range(box.a1, "a1");
  detail::check_range(box.a3, "a3");
  if (box.a1.lo <= 0.0 || box.a3.lo <= 0.0) {
    throw Error(Errc::InvalidArgument, "rectangular box must lie in (0, inf)^2");
  }
  if (box.a1.width() <= 0.0 || box.a3.width() <= 0.0) {
    throw Error(Errc::EmptyBox, "rectangular box has zero volume");
  }
  RngCursor cursor(state);
  const double l1 = std::log(box.a1.lo);
  const double l3 = std::log(box.a3.lo);
  const double a1 = std::exp(l1 + (std::log(box.a1.hi) - l1) * cursor.next_uniform());
  const double a3 = std::exp(l3 + (std::log(box.a3.hi) - l3) * cursor.next_uniform());
  auto form = rectangular_form(a1, a3);
  return ModuliSample{form, 1.0 / (a1 * a3), {state.seed, state.stream, cursor.consumed()}};
}

}  // namespace torusgaps
