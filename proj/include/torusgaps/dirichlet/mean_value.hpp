#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "torusgaps/diophantine/primes.hpp"
#include "torusgaps/dirichlet/polynomial.hpp"

namespace torusgaps {

struct MeanValueResult {
  double lhs;  // integral over [-T, T] of |sum a_n n^(-it)|^2
  double rhs;  // 3 (T + X) sum a_n^2
  std::uint64_t evaluations;
};

inline constexpr int kQuadratureMaxDepth = 40;

/// |sum_{n <= X} a_n n^(-it)|^2 for real a_n (a[0] is a_1). n^(-it) is built
/// multiplicatively from the smallest prime factor, so only primes cost a
/// sincos.
class DirichletSquare {
 public:
  explicit DirichletSquare(std::vector<double> a)
      : a_(std::move(a)), spf_(smallest_prime_factors(static_cast<std::uint32_t>(a_.size()))), z_(a_.size() + 1) {}

  double operator()(double t) {
    const std::size_t x = a_.size();
    if (x == 0) return 0.0;
    z_[1] = {1.0, 0.0};
    cplx s = a_[0];
    for (std::size_t n = 2; n <= x; ++n) {
      const std::uint32_t p = spf_[n];
      if (p == n) {
        const double theta = t * std::log(static_cast<double>(n));
        z_[n] = {std::cos(theta), -std::sin(theta)};
      } else {
        z_[n] = z_[p] * z_[n / p];
      }
      s += a_[n - 1] * z_[n];
    }
    return std::norm(s);
  }

  std::size_t size() const noexcept { return a_.size(); }

 private:
  std::vector<double> a_;
  std::vector<std::uint32_t> spf_;
  std::vector<cplx> z_;
};

namespace detail {

template <typename F>
double adaptive_simpson(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                        std::uint64_t& evals) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  evals += 2;
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  if (depth >= kQuadratureMaxDepth) throw Error(Errc::QuadratureFailure, "adaptive Simpson exceeded depth 40");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, evals) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, evals);
}

}  // namespace detail

/// Integrates |sum a_n n^(-it)|^2 over [-T, T] by adaptive Simpson. The
/// integrand is even for real coefficients, so [0, T] is integrated and
/// doubled. Initial panels are no wider than 1/(4 log(X) / (2 pi)), a quarter
/// period of the fastest oscillation; each panel gets an absolute tolerance of
/// 1e-7 times its share of the mean 2T sum a_n^2.
inline MeanValueResult mean_value_check(const std::vector<double>& a, double t) {
  if (a.empty()) throw Error(Errc::InvalidArgument, "coefficient sequence is empty");
  if (a.size() > 100'000) throw Error(Errc::BudgetExceeded, "coefficient support exceeds 1e5");
  if (!(t > 0.0) || t > 1e4) throw Error(Errc::InvalidArgument, "T must lie in (0, 1e4]");
  double sum_sq = 0.0;
  for (double v : a) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "coefficients must be finite");
    sum_sq += v * v;
  }
  const double x = static_cast<double>(a.size());
  const double rhs = 3.0 * (t + x) * sum_sq;
  if (sum_sq == 0.0) return {0.0, rhs, 0};

  DirichletSquare f(a);
  const double freq = std::log(std::max(x, 2.0)) / (2.0 * std::numbers::pi);
  const double width = 1.0 / (4.0 * freq);
  const auto panels = static_cast<std::size_t>(std::ceil(t / width));
  const double h = t / static_cast<double>(panels);
  const double tol = 1e-7 * sum_sq * h;
  std::uint64_t evals = 0;
  long double total = 0.0L;
  double fa = f(0.0);
  ++evals;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = h * static_cast<double>(i);
    const double hi = i + 1 == panels ? t : h * static_cast<double>(i + 1);
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    evals += 2;
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 0, evals);
    fa = fb;
  }
  return {static_cast<double>(2.0L * total), rhs, evals};
}

}  // namespace torusgaps
