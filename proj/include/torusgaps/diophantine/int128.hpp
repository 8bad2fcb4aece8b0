#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "torusgaps/error.hpp"

namespace torusgaps {

using i128 = __int128;

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit multiplication overflow");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit subtraction overflow");
  return r;
}

inline i128 abs128(i128 a) { return a < 0 ? -a : a; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with the negative magnitude so INT128_MIN is representable.
  i128 v = negative ? value : -value;
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

/// Exact rational num/den with den > 0 and gcd(num, den) = 1.
class Rational {
 public:
  Rational(i128 num = 0, i128 den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw Error(Errc::InvalidArgument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const i128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i128 num() const noexcept { return num_; }
  i128 den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  i128 num_;
  i128 den_;
};

}  // namespace torusgaps
