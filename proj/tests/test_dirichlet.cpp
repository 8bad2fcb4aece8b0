#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torusgaps/core/rng.hpp"
#include "torusgaps/dirichlet/gstar.hpp"
#include "torusgaps/dirichlet/mean_value.hpp"
#include "torusgaps/dirichlet/polynomial.hpp"
#include "torusgaps/dirichlet/ramare.hpp"

using namespace torusgaps;

namespace {

const PrimeInterval kI = PrimeInterval::from_log(16, 0.25);

void expect_close(cplx got, std::complex<double> want, double tol) {
  EXPECT_LE(std::abs(got - want), tol) << got << " vs " << want;
}

// Taylor series of (d1^z - d2^z) / z in long double, for |z| log d small.
std::complex<double> gstar_series(std::complex<long double> z, long double d1, long double d2) {
  const long double l1 = std::log(d1), l2 = std::log(d2);
  std::complex<long double> sum = 0, zk = 1;
  long double p1 = l1, p2 = l2, fact = 1;
  for (int k = 1; k <= 8; ++k) {
    fact *= k;
    sum += zk * ((p1 - p2) / fact);
    zk *= z;
    p1 *= l1;
    p2 *= l2;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace

TEST(Polynomial, UnitCountsTerms) {
  expect_close(evaluate(unit_spec(10, 15), 0.0), {5.0, 0.0}, 1e-15);
  expect_close(evaluate(unit_spec(10, 15), 0.3), oracle::dirichlet(10, 15, 0.3, [](auto) { return 1.0; }), 1e-12);
  for (double y : {-7.5, 0.01, 3.3, 250.0}) EXPECT_LE(std::abs(evaluate(unit_spec(100, 400), y)), 300.0);
  expect_close(f_polynomial(0.7, 50), oracle::dirichlet(50, 200, 0.7, [](auto) { return 1.0; }), 1e-11);
}

TEST(Polynomial, CoefficientRules) {
  DirichletSpec s = unit_spec(1000, 3000);
  s.interval = kI;
  for (auto rule : {CoeffRule::HasMiddlePrime, CoeffRule::NoMiddlePrime, CoeffRule::OmegaWeighted, CoeffRule::PrimesOnly}) {
    s.rule = rule;
    const auto want = oracle::dirichlet(1000, 3000, 1.7, [&](std::uint64_t t) {
      const unsigned w = oracle::omega_in(t, kI.lo, kI.hi);
      switch (rule) {
        case CoeffRule::HasMiddlePrime: return w > 0 ? 1.0 : 0.0;
        case CoeffRule::NoMiddlePrime: return w == 0 ? 1.0 : 0.0;
        case CoeffRule::OmegaWeighted: return 1.0 / (w + 1.0);
        default: return oracle::prime_divisors(t) == std::vector<std::uint64_t>{t} && kI.contains(t) ? 1.0 : 0.0;
      }
    });
    expect_close(evaluate(s, 1.7), want, 1e-10);
  }
  s.rule = CoeffRule::Table;
  s.table.assign(5, 2.0);
  EXPECT_THROW(evaluate(s, 0.0), Error);
  s.table.assign(2000, 0.5);
  s.scale = 4.0;
  expect_close(evaluate(s, 0.0), {4000.0, 0.0}, 1e-9);
}

TEST(Polynomial, WorkerIndependentAndBudget) {
  const auto c = coefficients(unit_spec(0, 300'000));
  const cplx a = evaluate_coefficients(c, 1, 2.25, 1);
  const cplx b = evaluate_coefficients(c, 1, 2.25, 5);
  EXPECT_EQ(a, b);
  EXPECT_THROW(coefficients(unit_spec(0, 200'000'000)), Error);
  EXPECT_THROW(evaluate(unit_spec(1, 5), NAN), Error);
}

TEST(Gstar, LinearCaseAndLimit) {
  expect_close(gstar(cplx{1.0, 0.0}, 15, 10), {5.0, 0.0}, 1e-12);
  expect_close(gstar(cplx{0.0, 0.0}, 15, 10), {std::log(1.5), 0.0}, 1e-15);
  expect_close(gstar(cplx{1e-12, 0.0}, 15, 10), gstar_series({1e-12L, 0.0L}, 15, 10), 1e-15);
  EXPECT_THROW(gstar(cplx{1, 0}, 0.0, 10), Error);
}

TEST(Gstar, ContinuousAcrossSeriesRadius) {
  for (double d1 : {2.0, 10.5, 1e4}) {
    for (double phase : {0.0, 1.0, 2.5}) {
      const cplx dir{std::cos(phase), std::sin(phase)};
      for (double r : {0.999e-8, 1.001e-8}) {
        const cplx z = dir * r;
        const auto want = gstar_series({z.real(), z.imag()}, d1, 10.0L);
        EXPECT_LE(std::abs(gstar(z, d1, 10.0) - want), 1e-13 * std::max(1.0, std::abs(want))) << d1 << " " << r;
      }
    }
  }
}

TEST(Gstar, AgreesWithDirectFormula) {
  for (double y : {-3.0, 0.3, 11.0}) {
    const cplx z{1.0, -2 * std::numbers::pi * y};
    const cplx want = (std::pow(cplx{10.5, 0}, z) - std::pow(cplx{10.0, 0}, z)) / z;
    expect_close(gstar(z, 10.5, 10.0), want, 1e-12);
  }
}

TEST(Gstar, PartialSummationBound) {
  for (double y = -20.0; y <= 20.0; y += 0.37) {
    const auto p = partial_summation_point(y, 1000, 1500);
    EXPECT_LE(p.error, p.bound) << y;
  }
  const auto p = partial_summation_point(0.3, 10, 15);
  EXPECT_LE(p.error, 2.0 * (1 + 0.3));
}

TEST(Ramare, ExactAtZeroFrequency) {
  RamareParams p;
  const RamareSplit s = ramare_split(p);
  EXPECT_LE(s.residual, 1e-6);
  EXPECT_TRUE(s.d_support_ok);
  const RamareExact e = ramare_split_exact(p);
  EXPECT_EQ(e.residual(), 0);
  EXPECT_EQ(e.target, kRamareScale * static_cast<std::int64_t>(std::llround(s.target.real())));
}

TEST(Ramare, TargetMatchesDirectSum) {
  RamareParams p;
  p.d = 4000;
  p.y = 12.75;
  const RamareSplit s = ramare_split(p);
  const auto want = oracle::dirichlet(4000, 5000, p.y, [](std::uint64_t t) {
    return oracle::omega_in(t, kI.lo, kI.hi) > 0 ? 1.0 : 0.0;
  });
  expect_close(s.target, want, 1e-9);
  EXPECT_LE(s.residual, 1e-6);
}

TEST(Ramare, RandomFrequencies) {
  RngCursor cur(RngState{31, 0});
  for (int i = 0; i < 12; ++i) {
    RamareParams p;
    p.d = static_cast<double>(cur.next_int(100, 20000));
    p.y = -1000 + 2000 * cur.next_uniform();
    const RamareSplit s = ramare_split(p);
    EXPECT_LE(s.residual, 1e-6) << p.d << " " << p.y;
    EXPECT_TRUE(s.d_support_ok);
    for (const auto& [n, dn] : s.d_coefficients) EXPECT_LE(std::abs(dn), 1.0 + 1e-12);
  }
}

TEST(Ramare, EmptyTargetRange) {
  // Below e^2 no integer has a prime divisor in I.
  RamareParams p;
  p.d = 2;
  p.y = 0.4;
  const RamareSplit s = ramare_split(p);
  EXPECT_EQ(s.target, cplx{});
  EXPECT_EQ(s.main, cplx{});
  EXPECT_EQ(s.boundary, cplx{});
  EXPECT_EQ(s.squares, cplx{});
  EXPECT_EQ(ramare_split_exact(p).target, 0);
}

TEST(Ramare, ParameterChecks) {
  RamareParams p;
  p.kappa = 0.0;
  EXPECT_THROW(ramare_split(p), Error);
  p = RamareParams{};
  p.delta_prime = 1.5;
  EXPECT_THROW(ramare_split(p), Error);
  p = RamareParams{};
  p.d = 1e8;
  EXPECT_THROW(ramare_split(p), Error);
}

TEST(MeanValue, SingleCoefficient) {
  const auto r = mean_value_check({1.0}, 50.0);
  EXPECT_NEAR(r.lhs, 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.rhs, 3.0 * 51.0);
}

TEST(MeanValue, QuadratureMatchesClosedForm) {
  const std::vector<double> ones(100, 1.0);
  const auto r = mean_value_check(ones, 100.0);
  EXPECT_NEAR(r.lhs, oracle::mean_value_integral(ones, 100.0), 1e-5 * r.lhs);
  EXPECT_LE(r.lhs, r.rhs);
  RngCursor cur(RngState{32, 0});
  std::vector<double> signs(300);
  for (auto& v : signs) v = cur.next_int(0, 1) ? 1.0 : -1.0;
  const auto s = mean_value_check(signs, 200.0);
  EXPECT_NEAR(s.lhs, oracle::mean_value_integral(signs, 200.0), 1e-5 * s.lhs);
}

TEST(MeanValue, Validation) {
  EXPECT_THROW(mean_value_check({}, 10.0), Error);
  EXPECT_THROW(mean_value_check({1.0}, 0.0), Error);
  EXPECT_THROW(mean_value_check({1.0}, 2e4), Error);
  EXPECT_THROW(mean_value_check(std::vector<double>(200'000, 1.0), 1.0), Error);
  EXPECT_EQ(mean_value_check({0.0, 0.0}, 5.0).lhs, 0.0);
}
