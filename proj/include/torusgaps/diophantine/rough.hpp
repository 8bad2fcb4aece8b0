#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "torusgaps/diophantine/primes.hpp"

namespace torusgaps {

inline constexpr double kSieveBudget = 1e8;

/// The prime range I = (exp((log N)^rho), exp((log N)^(1-rho))].
struct PrimeInterval {
  double lo;
  double hi;

  bool empty() const noexcept { return !(hi > lo); }
  bool contains(double p) const noexcept { return p > lo && p <= hi; }

  static PrimeInterval from_log(double log_n, double rho) {
    if (!(rho > 0.0 && rho < 0.5)) throw Error(Errc::InvalidArgument, "rho must lie in (0, 1/2)");
    if (!(log_n >= std::log(3.0)) || !std::isfinite(log_n)) throw Error(Errc::InvalidArgument, "N must be at least 3");
    return {std::exp(std::pow(log_n, rho)), std::exp(std::pow(log_n, 1.0 - rho))};
  }
  static PrimeInterval from_n(double n, double rho) { return from_log(std::log(n), rho); }
};

/// Primes p in I, ascending.
inline std::vector<std::uint64_t> primes_in(const PrimeInterval& interval) {
  if (interval.empty()) return {};
  if (interval.hi > kSieveBudget) throw Error(Errc::SieveBudgetExceeded, "prime interval extends beyond 1e8");
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(interval.hi)))) {
    if (interval.contains(static_cast<double>(p))) out.push_back(p);
  }
  return out;
}

/// Number of distinct prime divisors of m lying in I.
inline unsigned omega_I(std::uint64_t m, const PrimeInterval& interval) {
  if (m == 0) throw Error(Errc::InvalidArgument, "m must be positive");
  unsigned count = 0;
  for (auto p : distinct_prime_factors(m)) {
    if (interval.contains(static_cast<double>(p))) ++count;
  }
  return count;
}

/// n has a prime divisor in I.
inline bool in_S_rho(std::uint64_t n, const PrimeInterval& interval) { return omega_I(n, interval) > 0; }

/// omega_I(m) for every m in (lo, hi], via marking multiples of the primes in I.
inline std::vector<std::uint8_t> omega_I_range(std::uint64_t lo, std::uint64_t hi, const PrimeInterval& interval) {
  if (hi < lo) return {};
  if (static_cast<double>(hi - lo) > kSieveBudget) throw Error(Errc::SieveBudgetExceeded, "range exceeds sieve budget");
  std::vector<std::uint8_t> omega(hi - lo, 0);
  if (interval.empty()) return omega;
  const double top = std::min(interval.hi, static_cast<double>(hi));
  if (!(top > interval.lo)) return omega;
  for (auto p : primes_in(PrimeInterval{interval.lo, top})) {
    for (std::uint64_t k = (lo / p + 1) * p; k <= hi; k += p) ++omega[k - lo - 1];
  }
  return omega;
}

/// P_N = prod over p in I of (1 - 1/p).
inline double mertens_product(const PrimeInterval& interval) {
  long double product = 1.0L;
  for (auto p : primes_in(interval)) product *= 1.0L - 1.0L / static_cast<long double>(p);
  return static_cast<double>(product);
}

struct RoughDensity {
  std::uint64_t empirical;  // #{n <= D : n has no prime divisor in I}
  double predicted;         // D * P_N
};

inline RoughDensity rough_density(std::uint64_t d, const PrimeInterval& interval) {
  const auto omega = omega_I_range(0, d, interval);
  std::uint64_t rough = 0;
  for (auto w : omega) rough += (w == 0);
  return {rough, static_cast<double>(d) * mertens_product(interval)};
}

}  // namespace torusgaps
