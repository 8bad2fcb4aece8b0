#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "torusgaps/core/parallel.hpp"
#include "torusgaps/diophantine/rough.hpp"

namespace torusgaps {

using cplx = std::complex<double>;

enum class CoeffRule {
  Unit,            // 1
  HasMiddlePrime,  // 1 if t has a prime divisor in I (t in S_rho)
  NoMiddlePrime,   // 1 if t has no prime divisor in I
  OmegaWeighted,   // 1 / (omega_I(t) + shift)
  PrimesOnly,      // 1 if t is a prime in I
  Table,           // explicit values, table[t - lo - 1]
};

/// sum over lo < t <= hi of coeff(t) t^(-2 pi i y), times `scale`.
struct DirichletSpec {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  CoeffRule rule = CoeffRule::Unit;
  PrimeInterval interval{0.0, 0.0};
  unsigned shift = 1;
  std::vector<double> table;
  double scale = 1.0;

  std::uint64_t size() const noexcept { return hi > lo ? hi - lo : 0; }
};

inline DirichletSpec unit_spec(std::uint64_t lo, std::uint64_t hi) {
  DirichletSpec s;
  s.lo = lo;
  s.hi = hi;
  return s;
}

inline constexpr std::uint64_t kDirichletTermBudget = 100'000'000;
inline constexpr std::size_t kDirichletChunk = std::size_t{1} << 16;

/// Coefficients for t = lo + 1, ..., hi (already multiplied by scale).
inline std::vector<double> coefficients(const DirichletSpec& spec) {
  const std::uint64_t n = spec.size();
  if (n > kDirichletTermBudget) throw Error(Errc::BudgetExceeded, "Dirichlet polynomial exceeds 1e8 terms");
  std::vector<double> c(n, spec.scale);
  switch (spec.rule) {
    case CoeffRule::Unit:
      break;
    case CoeffRule::HasMiddlePrime:
    case CoeffRule::NoMiddlePrime:
    case CoeffRule::OmegaWeighted: {
      const auto omega = omega_I_range(spec.lo, spec.hi, spec.interval);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (spec.rule == CoeffRule::HasMiddlePrime) {
          c[i] *= omega[i] > 0 ? 1.0 : 0.0;
        } else if (spec.rule == CoeffRule::NoMiddlePrime) {
          c[i] *= omega[i] == 0 ? 1.0 : 0.0;
        } else {
          if (omega[i] + spec.shift == 0) throw Error(Errc::InvalidArgument, "omega weight with zero denominator");
          c[i] /= static_cast<double>(omega[i] + spec.shift);
        }
      }
      break;
    }
    case CoeffRule::PrimesOnly:
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t t = spec.lo + 1 + i;
        c[i] *= (spec.interval.contains(static_cast<double>(t)) && is_prime(t)) ? 1.0 : 0.0;
      }
      break;
    case CoeffRule::Table:
      if (spec.table.size() != n) throw Error(Errc::InvalidArgument, "coefficient table does not match the support");
      for (std::uint64_t i = 0; i < n; ++i) c[i] *= spec.table[i];
      break;
  }
  return c;
}

namespace detail {

struct KahanComplex {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

  void add(double x, double y) {
    const double yr = x - cre;
    const double tr = re + yr;
    cre = (tr - re) - yr;
    re = tr;
    const double yi = y - cim;
    const double ti = im + yi;
    cim = (ti - im) - yi;
    im = ti;
  }
  cplx value() const { return {re, im}; }
};

}  // namespace detail

/// sum of c[i] (first + i)^(-2 pi i y). Chunks of 2^16 terms are summed with
/// Kahan compensation and combined in chunk order, so the result does not
/// depend on `workers`.
inline cplx evaluate_coefficients(const std::vector<double>& c, std::uint64_t first, double y, unsigned workers = 1) {
  const std::size_t chunks = (c.size() + kDirichletChunk - 1) / kDirichletChunk;
  std::vector<cplx> partial(chunks);
  const double w = 2.0 * std::numbers::pi * y;
  parallel_for_index(chunks, workers, [&](std::size_t k) {
    detail::KahanComplex acc;
    const std::size_t end = std::min(c.size(), (k + 1) * kDirichletChunk);
    for (std::size_t i = k * kDirichletChunk; i < end; ++i) {
      if (c[i] == 0.0) continue;
      const double theta = w * std::log(static_cast<double>(first + i));
      acc.add(c[i] * std::cos(theta), -c[i] * std::sin(theta));
    }
    partial[k] = acc.value();
  });
  detail::KahanComplex total;
  for (const auto& p : partial) total.add(p.real(), p.imag());
  return total.value();
}

inline cplx evaluate(const DirichletSpec& spec, double y, unsigned workers = 1) {
  if (!std::isfinite(y)) throw Error(Errc::InvalidArgument, "frequency must be finite");
  return evaluate_coefficients(coefficients(spec), spec.lo + 1, y, workers);
}

/// F(u, D) = sum over D < t <= 4D of t^(-2 pi i u).
inline cplx f_polynomial(double u, std::uint64_t d, unsigned workers = 1) {
  return evaluate(unit_spec(d, 4 * d), u, workers);
}

}  // namespace torusgaps
