#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "torusgaps/core/parallel.hpp"
#include "torusgaps/diophantine/octuple.hpp"

namespace torusgaps {

/// Magnitude range lo <= |v| <= hi; both signs are enumerated.
struct AbsBox {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool empty() const noexcept { return lo > hi || hi < 0; }
  std::vector<std::int64_t> values() const {
    std::vector<std::int64_t> out;
    if (empty()) return out;
    for (std::int64_t v = -hi; v <= hi; ++v) {
      const std::int64_t m = v < 0 ? -v : v;
      if (m >= lo) out.push_back(v);
    }
    return out;
  }
};

struct OctupleBoxes {
  std::array<AbsBox, 4> a;
  std::array<AbsBox, 4> b;

  static OctupleBoxes uniform(AbsBox box) { return {{box, box, box, box}, {box, box, box, box}}; }
};

struct OctupleCountParams {
  OctupleBoxes boxes;
  std::int64_t det_lo = 1;  // det_lo <= |Det| <= det_hi
  std::int64_t det_hi = 2;
  double t = 1.0;
  double m = 1.0;
  double eps_exponent = 0.05;
  unsigned workers = 1;
};

struct OctupleCounts {
  std::uint64_t zero_coordinate = 0;  // some a_i or b_i vanishes
  std::uint64_t zero_det = 0;         // all coordinates nonzero, Det = 0
  std::uint64_t generic = 0;          // all coordinates nonzero, Det != 0

  std::uint64_t total() const noexcept { return zero_coordinate + zero_det + generic; }
  std::uint64_t degenerate() const noexcept { return zero_coordinate + zero_det; }
  friend bool operator==(const OctupleCounts&, const OctupleCounts&) = default;
};

inline constexpr double kOctupleVolumeBudget = 1e10;

/// The condition |Det1|, |Det2| <= eps (|Det| + P/T), with eps = M^eps_exponent,
/// tested as |Det_i| T <= eps (|Det| T + P).
inline bool octuple_delta_condition(i128 det, i128 det1, i128 det2, i128 p, long double t, long double eps) {
  const long double rhs = eps * (static_cast<long double>(abs128(det)) * t + static_cast<long double>(p));
  return static_cast<long double>(abs128(det1)) * t <= rhs && static_cast<long double>(abs128(det2)) * t <= rhs;
}

namespace detail {

// Half of an octuple: (a_i, a_j, b_i, b_j) reduces to u = a_i a_j,
// v = b_i b_j, w = a_i b_j + b_i a_j. In these terms
//   Det = u1 u2 - v1 v2, Det1 = u1 w2 - w1 v2, Det2 = w1 u2 - v1 w2.
struct HalfEntry {
  std::int64_t w;
  bool has_zero;
  std::uint64_t count;
};

struct HalfGroup {
  std::int64_t u;
  std::int64_t v;
  std::vector<HalfEntry> entries;
};

inline std::vector<HalfGroup> half_groups(const AbsBox& ai, const AbsBox& aj, const AbsBox& bi, const AbsBox& bj) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::map<std::pair<std::int64_t, bool>, std::uint64_t>> hist;
  const auto va = ai.values(), vb = aj.values(), vc = bi.values(), vd = bj.values();
  for (auto x : va) {
    for (auto z : vc) {
      if (x == 0 && z == 0) continue;
      for (auto y : vb) {
        for (auto s : vd) {
          if (y == 0 && s == 0) continue;
          const bool zero = x == 0 || y == 0 || z == 0 || s == 0;
          ++hist[{x * y, z * s}][{x * s + z * y, zero}];
        }
      }
    }
  }
  std::vector<HalfGroup> groups;
  groups.reserve(hist.size());
  for (const auto& [uv, inner] : hist) {
    HalfGroup g{uv.first, uv.second, {}};
    g.entries.reserve(inner.size());
    for (const auto& [wz, c] : inner) g.entries.push_back({wz.first, wz.second, c});
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace detail

/// Exhaustive count of octuples in the boxes with (a_i, b_i) != (0, 0),
/// det_lo <= |Det| <= det_hi, P != 0 and the Det1/Det2 condition, split by
/// stratum. The two halves are histogrammed by (u, v, w) and joined.
inline OctupleCounts count_8tuples(const OctupleCountParams& params) {
  if (!(params.t > 0.0) || !(params.m >= 1.0) || !std::isfinite(params.eps_exponent)) {
    throw Error(Errc::InvalidArgument, "count_8tuples needs T > 0, M >= 1 and finite eps exponent");
  }
  double volume = 1.0;
  for (int i = 0; i < 4; ++i) {
    volume *= static_cast<double>(params.boxes.a[i].values().size());
    volume *= static_cast<double>(params.boxes.b[i].values().size());
  }
  if (volume > kOctupleVolumeBudget) throw Error(Errc::BudgetExceeded, "octuple box volume exceeds 1e10");
  if (volume == 0.0 || params.det_lo > params.det_hi) return {};
  for (int i = 0; i < 4; ++i) {
    if (std::max(std::abs(params.boxes.a[i].hi), std::abs(params.boxes.b[i].hi)) > 1'000'000) {
      throw Error(Errc::Overflow, "octuple box entries must stay below 1e6");
    }
  }

  const auto& bx = params.boxes;
  const auto left = detail::half_groups(bx.a[0], bx.a[1], bx.b[0], bx.b[1]);
  const auto right = detail::half_groups(bx.a[2], bx.a[3], bx.b[2], bx.b[3]);
  const long double t = params.t;
  const long double eps = std::pow(static_cast<long double>(params.m), static_cast<long double>(params.eps_exponent));

  std::vector<OctupleCounts> partial(left.size());
  parallel_for_index(left.size(), params.workers, [&](std::size_t li) {
    const auto& g1 = left[li];
    OctupleCounts& out = partial[li];
    for (const auto& g2 : right) {
      const i128 det = static_cast<i128>(g1.u) * g2.u - static_cast<i128>(g1.v) * g2.v;
      const i128 ad = abs128(det);
      if (ad < params.det_lo || ad > params.det_hi) continue;
      const i128 p = std::max({abs128(g1.u), abs128(g2.u), abs128(g1.v), abs128(g2.v)});
      if (p == 0) continue;
      for (const auto& e1 : g1.entries) {
        for (const auto& e2 : g2.entries) {
          const i128 det1 = static_cast<i128>(g1.u) * e2.w - static_cast<i128>(e1.w) * g2.v;
          const i128 det2 = static_cast<i128>(e1.w) * g2.u - static_cast<i128>(g1.v) * e2.w;
          if (!octuple_delta_condition(det, det1, det2, p, t, eps)) continue;
          const std::uint64_t c = e1.count * e2.count;
          if (e1.has_zero || e2.has_zero) {
            out.zero_coordinate += c;
          } else if (det == 0) {
            out.zero_det += c;
          } else {
            out.generic += c;
          }
        }
      }
    }
  });
  OctupleCounts total;
  for (const auto& p : partial) {
    total.zero_coordinate += p.zero_coordinate;
    total.zero_det += p.zero_det;
    total.generic += p.generic;
  }
  return total;
}

}  // namespace torusgaps
