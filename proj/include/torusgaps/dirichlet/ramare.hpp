#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "torusgaps/dirichlet/polynomial.hpp"

namespace torusgaps {

struct RamareParams {
  double y = 0.0;
  double d = 1000.0;         // D; the target range is D < t <= D' = D (1 + delta')
  double log_n = 16.0;       // log N
  double rho = 0.25;
  double kappa = 0.1;        // prime boxes (P0 (1+kappa)^j, P0 (1+kappa)^(j+1)]
  double delta_prime = 0.25;
  double p0 = 0.0;           // 0 selects the lower endpoint of I
  std::uint64_t budget = 50'000'000;
};

struct RamareSplit {
  cplx target;    // G_{rho,N}(y, D) = sum over t in S_rho, D < t <= D' of t^(-2 pi i y)
  cplx main;      // sum over boxes of Q_P(y) R_P(y)
  cplx boundary;  // sum of d_n n^(-2 pi i y)
  cplx squares;   // terms with p | m
  double residual;
  std::uint64_t term_count;
  std::vector<std::pair<std::uint64_t, double>> d_coefficients;  // nonzero (n, d_n)
  bool d_support_ok;  // every nonzero d_n lies in J and |d_n| <= 1
};

namespace detail {

/// Shared geometry of the decomposition. Every range test goes through the
/// same floating predicates so the main term and the boundary coefficients
/// agree on which (p, m) pairs are boxed.
struct RamareLayout {
  double d;
  double d_prime;
  PrimeInterval interval;
  std::vector<double> box_lo;                // P_j
  std::vector<std::uint64_t> primes;         // primes in I
  std::vector<std::size_t> box_of;           // box index per prime
  std::uint64_t t_lo, t_hi;                  // D < t <= D'
  std::uint64_t n_hi;                        // last integer that a boxed product can reach
  std::vector<std::uint8_t> omega;           // omega_I(k) for 1 <= k <= n_hi, at index k - 1

  RamareLayout(const RamareParams& p) {
    if (!(p.d >= 1.0) || !std::isfinite(p.d)) throw Error(Errc::InvalidArgument, "D must be at least 1");
    if (!(p.delta_prime > 0.0 && p.delta_prime < 1.0)) throw Error(Errc::InvalidArgument, "delta' must lie in (0, 1)");
    if (!(p.kappa > 0.0 && p.kappa <= 1.0)) throw Error(Errc::InvalidArgument, "kappa must lie in (0, 1]");
    interval = PrimeInterval::from_log(p.log_n, p.rho);
    d = p.d;
    d_prime = p.d * (1.0 + p.delta_prime);
    t_lo = static_cast<std::uint64_t>(std::floor(d));
    t_hi = static_cast<std::uint64_t>(std::floor(d_prime));
    n_hi = static_cast<std::uint64_t>(std::floor(d_prime * (1.0 + p.kappa))) + 1;
    if (static_cast<double>(n_hi) > static_cast<double>(p.budget)) {
      throw Error(Errc::BudgetExceeded, "Ramare decomposition range exceeds budget");
    }
    omega = omega_I_range(0, n_hi, interval);
    const double p0 = p.p0 > 0.0 ? p.p0 : interval.lo;
    if (p0 > interval.lo) throw Error(Errc::InvalidArgument, "P0 must not exceed the lower endpoint of I");
    if (!interval.empty()) {
      primes = primes_in(interval);
      for (double b = p0; b < interval.hi; b *= 1.0 + p.kappa) box_lo.push_back(b);
      std::size_t j = 0;
      for (auto q : primes) {
        while (j + 1 < box_lo.size() && static_cast<double>(q) > box_lo[j + 1]) ++j;
        box_of.push_back(j);
      }
    }
  }

  unsigned omega_of(std::uint64_t k) const { return omega[k - 1]; }

  // D/P < m <= D'/P, tested as m P > D and m P <= D'.
  bool boxed_m(std::uint64_t m, double box) const {
    const double mp = static_cast<double>(m) * box;
    return mp > d && mp <= d_prime;
  }
  std::uint64_t boxed_m_lo(double box) const { return static_cast<std::uint64_t>(std::floor(d / box)); }
  std::uint64_t boxed_m_hi(double box) const { return static_cast<std::uint64_t>(std::floor(d_prime / box)) + 1; }

  bool in_target(std::uint64_t n) const { return n > t_lo && n <= t_hi; }
};

}  // namespace detail

/// Decomposes G_{rho,N}(y, D) via Ramare's identity. For t in S_rho,
///   1 = sum over p | t, p in I of 1 / omega_I(t),
/// and with t = p m, omega_I(t) = omega_I(m) + [p does not divide m]. Splitting
///   1/(omega(m) + [p does not divide m]) = 1/(omega(m) + 1) + [p | m] (1/omega(m) - 1/(omega(m) + 1))
/// gives G = (1/(omega+1)-weighted pair sum) + squares. The first sum is
/// replaced by the bilinear main term sum_j Q_{P_j} R_{P_j}, with the
/// discrepancy collected in the coefficients d_n of the boundary polynomial.
inline RamareSplit ramare_split(const RamareParams& params) {
  const detail::RamareLayout L(params);
  const double w = 2.0 * std::numbers::pi * params.y;
  auto phase = [&](std::uint64_t n) {
    const double theta = w * std::log(static_cast<double>(n));
    return cplx{std::cos(theta), -std::sin(theta)};
  };

  RamareSplit out{};
  out.term_count = 0;
  {
    detail::KahanComplex acc;
    for (std::uint64_t t = L.t_lo + 1; t <= L.t_hi; ++t) {
      if (L.omega_of(t) == 0) continue;
      const cplx z = phase(t);
      acc.add(z.real(), z.imag());
      ++out.term_count;
    }
    out.target = acc.value();
  }

  // Main term: Q_P R_P per box.
  {
    detail::KahanComplex acc;
    for (std::size_t j = 0; j < L.box_lo.size(); ++j) {
      detail::KahanComplex q, r;
      for (std::size_t i = 0; i < L.primes.size(); ++i) {
        if (L.box_of[i] != j) continue;
        const cplx z = phase(L.primes[i]);
        q.add(z.real(), z.imag());
      }
      if (q.value() == cplx{}) continue;
      const double box = L.box_lo[j];
      for (std::uint64_t m = std::max<std::uint64_t>(1, L.boxed_m_lo(box)); m <= L.boxed_m_hi(box); ++m) {
        if (!L.boxed_m(m, box)) continue;
        const cplx z = phase(m) / static_cast<double>(L.omega_of(m) + 1);
        r.add(z.real(), z.imag());
        ++out.term_count;
      }
      const cplx qr = q.value() * r.value();
      acc.add(qr.real(), qr.imag());
    }
    out.main = acc.value();
  }

  // d_n = (true pairs) - (boxed pairs), and the squares term.
  std::vector<double> d(L.n_hi, 0.0);
  detail::KahanComplex squares;
  for (std::size_t i = 0; i < L.primes.size(); ++i) {
    const std::uint64_t p = L.primes[i];
    const double box = L.box_lo[L.box_of[i]];
    const std::uint64_t m_top = std::max(L.t_hi / p, L.boxed_m_hi(box));
    for (std::uint64_t m = 1; m <= m_top; ++m) {
      const std::uint64_t n = p * m;
      if (n > L.n_hi) break;
      const unsigned om = L.omega_of(m);
      const double weight = 1.0 / static_cast<double>(om + 1);
      const bool truth = L.in_target(n);
      if (truth) d[n - 1] += weight;
      if (L.boxed_m(m, box)) d[n - 1] -= weight;
      if (truth && m % p == 0) {
        const cplx z = phase(n) * (1.0 / om - 1.0 / (om + 1));
        squares.add(z.real(), z.imag());
        ++out.term_count;
      }
    }
  }
  out.squares = squares.value();

  detail::KahanComplex boundary;
  out.d_support_ok = true;
  const double kappa = params.kappa;
  for (std::uint64_t n = 1; n <= L.n_hi; ++n) {
    const double dn = d[n - 1];
    if (std::abs(dn) < 1e-12) continue;
    out.d_coefficients.emplace_back(n, dn);
    const double x = static_cast<double>(n);
    const bool in_j = (x >= L.d / (1.0 + kappa) && x <= L.d * (1.0 + kappa)) ||
                      (x >= L.d_prime && x <= L.d_prime * (1.0 + kappa));
    if (!in_j || std::abs(dn) > 1.0 + 1e-12) out.d_support_ok = false;
    const cplx z = phase(n) * dn;
    boundary.add(z.real(), z.imag());
    ++out.term_count;
  }
  out.boundary = boundary.value();
  out.residual = std::abs(out.target - (out.main + out.boundary + out.squares));
  return out;
}

/// The same decomposition at y = 0 in exact integer arithmetic: every weight
/// 1/(k+1) and 1/(k(k+1)) with k <= 15 is an integer multiple of 1/720720.
struct RamareExact {
  std::int64_t target;    // scaled by kRamareScale
  std::int64_t main;
  std::int64_t boundary;
  std::int64_t squares;

  std::int64_t residual() const noexcept { return target - (main + boundary + squares); }
};

inline constexpr std::int64_t kRamareScale = 720720;

inline RamareExact ramare_split_exact(RamareParams params) {
  params.y = 0.0;
  const detail::RamareLayout L(params);
  auto inv = [](unsigned k) {
    if (k == 0 || k > 16) throw Error(Errc::Overflow, "omega exceeds exact weight table");
    return kRamareScale / static_cast<std::int64_t>(k);
  };
  RamareExact out{0, 0, 0, 0};
  for (std::uint64_t t = L.t_lo + 1; t <= L.t_hi; ++t) out.target += L.omega_of(t) > 0 ? kRamareScale : 0;

  std::vector<std::int64_t> q_count(L.box_lo.size(), 0);
  for (auto j : L.box_of) ++q_count[j];
  for (std::size_t j = 0; j < L.box_lo.size(); ++j) {
    if (q_count[j] == 0) continue;
    std::int64_t r = 0;
    const double box = L.box_lo[j];
    for (std::uint64_t m = std::max<std::uint64_t>(1, L.boxed_m_lo(box)); m <= L.boxed_m_hi(box); ++m) {
      if (L.boxed_m(m, box)) r += inv(L.omega_of(m) + 1);
    }
    out.main += q_count[j] * r;
  }

  std::vector<std::int64_t> d(L.n_hi, 0);
  for (std::size_t i = 0; i < L.primes.size(); ++i) {
    const std::uint64_t p = L.primes[i];
    const double box = L.box_lo[L.box_of[i]];
    const std::uint64_t m_top = std::max(L.t_hi / p, L.boxed_m_hi(box));
    for (std::uint64_t m = 1; m <= m_top; ++m) {
      const std::uint64_t n = p * m;
      if (n > L.n_hi) break;
      const unsigned om = L.omega_of(m);
      const bool truth = L.in_target(n);
      if (truth) d[n - 1] += inv(om + 1);
      if (L.boxed_m(m, box)) d[n - 1] -= inv(om + 1);
      if (truth && m % p == 0) out.squares += inv(om) - inv(om + 1);
    }
  }
  for (auto v : d) out.boundary += v;
  return out;
}

}  // namespace torusgaps
