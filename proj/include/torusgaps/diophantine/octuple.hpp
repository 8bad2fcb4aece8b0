#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "torusgaps/diophantine/int128.hpp"

namespace torusgaps {

struct PairTransform {
  i128 a1, a2, b1, b2;
  friend bool operator==(const PairTransform&, const PairTransform&) = default;
};

struct LatticePair {
  i128 x1, y1, x2, y2;
  friend bool operator==(const LatticePair&, const LatticePair&) = default;
};

inline bool same_parity(i128 a, i128 b) { return ((a - b) & 1) == 0; }

/// a1 = y1 - y2, a2 = y1 + y2, b1 = x1 - x2, b2 = x1 + x2.
inline PairTransform quadruple_transform(i128 x1, i128 y1, i128 x2, i128 y2) {
  return {checked_sub(y1, y2), checked_add(y1, y2), checked_sub(x1, x2), checked_add(x1, x2)};
}

inline LatticePair inverse_quadruple_transform(const PairTransform& t) {
  if (!same_parity(t.a1, t.a2) || !same_parity(t.b1, t.b2)) {
    throw Error(Errc::InverseParityViolation, "a1, a2 (or b1, b2) differ in parity");
  }
  return {(t.b1 + t.b2) / 2, (t.a1 + t.a2) / 2, (t.b2 - t.b1) / 2, (t.a2 - t.a1) / 2};
}

struct OctTuple {
  std::array<i128, 4> a{};
  std::array<i128, 4> b{};

  bool parity_ok() const {
    return same_parity(a[0], a[1]) && same_parity(b[0], b[1]) && same_parity(a[2], a[3]) && same_parity(b[2], b[3]);
  }
  bool nondegenerate() const {
    for (int i = 0; i < 4; ++i) {
      if (a[i] == 0 && b[i] == 0) return false;
    }
    return true;
  }
  bool admissible() const { return parity_ok() && nondegenerate(); }
};

struct DetInvariants {
  i128 det;
  i128 det1;
  i128 det2;
  i128 p_max;
  friend bool operator==(const DetInvariants&, const DetInvariants&) = default;
};

/// Largest magnitude accepted per entry; four-fold products then fit in 128 bits.
inline constexpr i128 kOctEntryBound = 2'000'000'000;

inline DetInvariants det_invariants(const OctTuple& o) {
  for (int i = 0; i < 4; ++i) {
    if (abs128(o.a[i]) > kOctEntryBound || abs128(o.b[i]) > kOctEntryBound) {
      throw Error(Errc::Overflow, "octuple entry exceeds 2e9 in magnitude");
    }
  }
  const auto [a1, a2, a3, a4] = o.a;
  const auto [b1, b2, b3, b4] = o.b;
  auto m4 = [](i128 w, i128 x, i128 y, i128 z) { return checked_mul(checked_mul(w, x), checked_mul(y, z)); };
  const i128 det = checked_sub(m4(a1, a2, a3, a4), m4(b1, b2, b3, b4));
  const i128 det1 = checked_sub(checked_add(m4(a1, a2, b3, a4), m4(a1, a2, a3, b4)),
                                checked_add(m4(a1, b2, b3, b4), m4(b1, a2, b3, b4)));
  const i128 det2 = checked_sub(checked_add(m4(a1, b2, a3, a4), m4(b1, a2, a3, a4)),
                                checked_add(m4(b1, b2, a3, b4), m4(b1, b2, b3, a4)));
  const i128 p = std::max({abs128(a1 * a2), abs128(a3 * a4), abs128(b1 * b2), abs128(b3 * b4)});
  return {det, det1, det2, p};
}

/// b1 = (a1 a2 a3 a4 - det) / (b2 b3 b4), then
/// Det1 - [(-a1/b2)(a2 a3 - b2 b3)(a2 a4 - b2 b4) + (a2/b2) det].
inline Rational substitution_residual(i128 a1, i128 a2, i128 a3, i128 a4, i128 b2, i128 b3, i128 b4, i128 det) {
  if (b2 == 0 || b3 == 0 || b4 == 0) throw Error(Errc::InvalidArgument, "b2 b3 b4 must be nonzero");
  const i128 numer = checked_sub(checked_mul(checked_mul(a1, a2), checked_mul(a3, a4)), det);
  const i128 denom = checked_mul(checked_mul(b2, b3), b4);
  if (numer % denom != 0) throw Error(Errc::NonDivisible, "b1 is not an integer for this det");
  const i128 b1 = numer / denom;
  const DetInvariants inv = det_invariants(OctTuple{{a1, a2, a3, a4}, {b1, b2, b3, b4}});
  const i128 bracket = checked_mul(checked_mul(a1, checked_sub(checked_mul(a2, a3), checked_mul(b2, b3))), checked_sub(checked_mul(a2, a4), checked_mul(b2, b4)));
  const i128 top = checked_sub(checked_add(checked_mul(b2, inv.det1), bracket), checked_mul(a2, det));
  return Rational(top, b2);
}

// t1 = m1 - m2, t2 = m1 + m2, t3 = n2 - n1, t4 = n2 + n1.
struct TQuad {
  std::int64_t t1, t2, t3, t4;
  friend bool operator==(const TQuad&, const TQuad&) = default;

  bool parity_ok() const { return ((t1 - t2) & 1) == 0 && ((t3 - t4) & 1) == 0; }
  bool admissible() const { return parity_ok() && !(t1 == 0 && t3 == 0); }
};

struct IndexPair {
  std::int64_t m1, n1, m2, n2;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

inline TQuad to_tquad(const IndexPair& p) { return {p.m1 - p.m2, p.m1 + p.m2, p.n2 - p.n1, p.n2 + p.n1}; }

inline IndexPair from_tquad(const TQuad& t) {
  if (!t.parity_ok()) throw Error(Errc::InverseParityViolation, "t1, t2 (or t3, t4) differ in parity");
  return {(t.t1 + t.t2) / 2, (t.t4 - t.t3) / 2, (t.t2 - t.t1) / 2, (t.t3 + t.t4) / 2};
}

}  // namespace torusgaps
