#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torusgaps/core/rng.hpp"
#include "torusgaps/diophantine/eight_tuple_count.hpp"
#include "torusgaps/diophantine/int128.hpp"
#include "torusgaps/diophantine/octuple.hpp"
#include "torusgaps/diophantine/primes.hpp"
#include "torusgaps/diophantine/rough.hpp"
#include "torusgaps/diophantine/t_quadruples.hpp"
#include "torusgaps/stats/pair_statistic.hpp"

using namespace torusgaps;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

OctupleCounts via_oracle(const OctupleCountParams& p) {
  oracle::OctBox a[4], b[4];
  for (int i = 0; i < 4; ++i) {
    a[i] = {p.boxes.a[i].lo, p.boxes.a[i].hi};
    b[i] = {p.boxes.b[i].lo, p.boxes.b[i].hi};
  }
  const auto c = oracle::octuples(a, b, p.det_lo, p.det_hi, p.t, std::pow(p.m, p.eps_exponent));
  return {c.zero_coordinate, c.zero_det, c.generic};
}

}  // namespace

TEST(Int128, CheckedArithmetic) {
  const i128 big = static_cast<i128>(1) << 100;
  EXPECT_THROW(checked_mul(big, big), Error);
  EXPECT_THROW(checked_add(std::numeric_limits<i128>::max(), 1), Error);
  EXPECT_THROW(checked_sub(std::numeric_limits<i128>::min(), 1), Error);
  EXPECT_EQ(checked_mul(-7, 6), -42);
  EXPECT_EQ(to_string(-big), "-1267650600228229401496703205376");
  EXPECT_EQ(gcd128(-12, 18), 6);
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_TRUE(Rational(0, 5).is_zero());
}

TEST(Transform, Examples) {
  const auto t = quadruple_transform(3, 2, 1, 1);
  EXPECT_EQ(t, (PairTransform{1, 3, 2, 4}));
  EXPECT_EQ(inverse_quadruple_transform({1, 3, 2, 4}), (LatticePair{3, 2, 1, 1}));
  EXPECT_EQ(code_of([] { inverse_quadruple_transform({1, 2, 2, 4}); }), Errc::InverseParityViolation);
}

TEST(Transform, RoundtripProperty) {
  RngCursor cur(RngState{21, 0});
  for (int i = 0; i < 20000; ++i) {
    const i128 x1 = cur.next_int(-500, 500), y1 = cur.next_int(-500, 500);
    const i128 x2 = cur.next_int(-500, 500), y2 = cur.next_int(-500, 500);
    const auto t = quadruple_transform(x1, y1, x2, y2);
    ASSERT_TRUE(same_parity(t.a1, t.a2) && same_parity(t.b1, t.b2));
    ASSERT_EQ(inverse_quadruple_transform(t), (LatticePair{x1, y1, x2, y2}));
  }
}

TEST(TQuad, RoundtripAndParity) {
  RngCursor cur(RngState{22, 0});
  for (int i = 0; i < 20000; ++i) {
    const IndexPair p{cur.next_int(1, 300), cur.next_int(0, 300), cur.next_int(1, 300), cur.next_int(0, 300)};
    const TQuad q = to_tquad(p);
    ASSERT_TRUE(q.parity_ok());
    ASSERT_EQ(from_tquad(q), p);
  }
  EXPECT_EQ(code_of([] { from_tquad({1, 2, 0, 0}); }), Errc::InverseParityViolation);
  EXPECT_FALSE((TQuad{0, 2, 0, 4}).admissible());
}

TEST(DetInvariants, Examples) {
  EXPECT_EQ(det_invariants({{1, 1, 1, 1}, {1, 1, 1, 1}}), (DetInvariants{0, 0, 0, 1}));
  EXPECT_EQ(det_invariants({{1, 2, 3, 4}, {1, 1, 1, 1}}), (DetInvariants{23, 11, 29, 12}));
  const auto z = det_invariants({{0, 0, 0, 0}, {2, 3, 5, 7}});
  EXPECT_EQ(z.det, -210);
  EXPECT_EQ(z.det1, 0);
}

TEST(DetInvariants, AgreesWithMonomials) {
  RngCursor cur(RngState{23, 0});
  for (int i = 0; i < 50000; ++i) {
    std::int64_t a[4], b[4];
    for (auto& x : a) x = cur.next_int(-3000, 3000);
    for (auto& x : b) x = cur.next_int(-3000, 3000);
    const auto got = det_invariants({{a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]}});
    const auto want = oracle::det_monomials(a, b);
    ASSERT_TRUE(got.det == want.det && got.det1 == want.det1 && got.det2 == want.det2 && got.p_max == want.p);
  }
  EXPECT_EQ(code_of([] { det_invariants({{3'000'000'000, 1, 1, 1}, {1, 1, 1, 1}}); }), Errc::Overflow);
}

TEST(Substitution, IdentityHolds) {
  EXPECT_TRUE(substitution_residual(1, 1, 1, 1, 1, 1, 1, 0).is_zero());
  RngCursor cur(RngState{24, 0});
  int checked = 0;
  while (checked < 20000) {
    std::int64_t v[8];
    for (auto& x : v) x = cur.next_int(-100, 100);
    if (v[5] == 0 || v[6] == 0 || v[7] == 0) continue;
    if (!OctTuple{{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}}.admissible()) continue;
    const i128 det = static_cast<i128>(v[0]) * v[1] * v[2] * v[3] - static_cast<i128>(v[4]) * v[5] * v[6] * v[7];
    ASSERT_TRUE(substitution_residual(v[0], v[1], v[2], v[3], v[5], v[6], v[7], det).is_zero());
    ++checked;
  }
}

TEST(Substitution, Errors) {
  EXPECT_EQ(code_of([] { substitution_residual(1, 1, 1, 1, 0, 1, 1, 0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { substitution_residual(1, 1, 1, 1, 2, 2, 2, 0); }), Errc::NonDivisible);
}

TEST(Count8, EmptyBoxesGiveZero) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{3, 2});
  EXPECT_EQ(count_8tuples(p).total(), 0u);
}

TEST(Count8, ZeroCoordinateStratumIsEmpty) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{0, 20});
  p.boxes.a[0] = AbsBox{0, 0};
  p.boxes.b[1] = AbsBox{0, 0};
  p.det_lo = 0;
  p.det_hi = 0;
  p.t = 400;
  p.m = 20;
  p.eps_exponent = 0.0;
  EXPECT_EQ(count_8tuples(p).total(), 0u);
}

TEST(Count8, MatchesSecondImplementationSmallBoxes) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{0, 3});
  p.det_lo = 0;
  p.det_hi = 5;
  p.t = 3;
  p.m = 4;
  p.eps_exponent = 1.0;
  const auto got = count_8tuples(p);
  EXPECT_EQ(got, via_oracle(p));
  EXPECT_GT(got.zero_coordinate, 0u);
  EXPECT_GT(got.zero_det, 0u);
  EXPECT_GT(got.generic, 0u);
}

TEST(Count8, MatchesSecondImplementationUnitBoxes) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{1, 8});
  p.det_lo = 0;
  p.det_hi = 1;
  p.t = 16;
  p.m = 8;
  p.eps_exponent = 0.0;
  p.workers = 2;
  EXPECT_EQ(count_8tuples(p), via_oracle(p));
}

TEST(Count8, WorkerIndependent) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{0, 4});
  p.det_lo = 1;
  p.det_hi = 10;
  p.t = 5;
  p.m = 10;
  const auto one = count_8tuples(p);
  p.workers = 7;
  EXPECT_EQ(count_8tuples(p), one);
}

TEST(Count8, Budgets) {
  OctupleCountParams p;
  p.boxes = OctupleBoxes::uniform(AbsBox{0, 100});
  EXPECT_EQ(code_of([&] { count_8tuples(p); }), Errc::BudgetExceeded);
  p.t = 0;
  EXPECT_EQ(code_of([&] { count_8tuples(p); }), Errc::InvalidArgument);
}

TEST(TQuadruples, MatchesSpectralPairs) {
  const double a = std::sqrt(2.0);
  const auto r = t_quadruples_rect(a, 50, 0.5);
  EXPECT_EQ(r.count, 14u);
  EXPECT_EQ(r.quads.size(), 14u);
  const Spectrum s = enumerate_rectangular(rectangular_form(a, 1), 50);
  EXPECT_EQ(pair_statistic(s, 50, Interval{0, 0.5, Bounds::Closed}).raw_pairs, r.count);
  for (const auto& q : r.quads) {
    EXPECT_TRUE(q.admissible());
    const IndexPair p = from_tquad(q);
    const double diff = eigenvalue(s.form(), p.m1, p.n1) - eigenvalue(s.form(), p.m2, p.n2);
    EXPECT_GE(diff, -1e-12);
    EXPECT_LE(diff, 0.5 + 1e-12);
  }
}

TEST(TQuadruples, NegativeDeltaAndMultiplicities) {
  EXPECT_EQ(t_quadruples_rect(1.3, 20, -0.1).count, 0u);
  // (1,2)~(2,1) and (1,3)~(3,1) are the coincidences below 10.
  EXPECT_EQ(t_quadruples_rect(1.0, 10, 0.0).count, 4u);
  const Spectrum s = enumerate_rectangular(rectangular_form(1, 1), 10);
  const std::vector<double> v(s.values().begin(), s.values().end());
  EXPECT_EQ(oracle::pairs(v, 0.0, 0.0), 4u);
}

TEST(TQuadruples, RandomCrossCheck) {
  RngCursor cur(RngState{25, 0});
  for (int i = 0; i < 8; ++i) {
    const double a = 1.0 + cur.next_uniform();
    const double n = 20.0 + 180.0 * cur.next_uniform();
    const double d = cur.next_uniform();
    const Spectrum s = enumerate_rectangular(rectangular_form(a, 1), n);
    EXPECT_EQ(t_quadruples_rect(a, n, d, false).count,
              pair_statistic(s, n, Interval{0, d, Bounds::Closed}).raw_pairs);
  }
}

TEST(TQuadruples, Budget) { EXPECT_EQ(code_of([] { t_quadruples_rect(1.0, 1e6, 0.1); }), Errc::BudgetExceeded); }

TEST(Primes, SieveAndMillerRabin) {
  const auto ps = primes_up_to(100);
  EXPECT_EQ(ps.size(), 25u);
  for (std::uint64_t n = 0; n < 5000; ++n) {
    ASSERT_EQ(is_prime(n), n >= 2 && oracle::prime_divisors(n) == std::vector<std::uint64_t>{n}) << n;
  }
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));
}

TEST(Primes, Factorization) {
  for (std::uint64_t n : {2ULL, 97ULL, 360ULL, 1'000'000'007ULL * 998'244'353ULL, 600851475143ULL}) {
    std::uint64_t prod = 1;
    for (auto p : factorize(n)) {
      EXPECT_TRUE(is_prime(p));
      prod *= p;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_EQ(distinct_prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
}

TEST(Rough, IntervalMembership) {
  const auto I = PrimeInterval::from_log(16, 0.25);
  EXPECT_NEAR(I.lo, std::exp(2.0), 1e-12);
  EXPECT_NEAR(I.hi, std::exp(8.0), 1e-9);
  EXPECT_TRUE(in_S_rho(22, I));
  EXPECT_FALSE(in_S_rho(6, I));
  EXPECT_EQ(omega_I(11 * 13 * 4, I), 2u);
  EXPECT_THROW(PrimeInterval::from_log(16, 0.5), Error);
  EXPECT_THROW(PrimeInterval::from_log(0.5, 0.25), Error);
}

TEST(Rough, OmegaRangeMatchesTrialDivision) {
  const auto I = PrimeInterval::from_log(16, 0.25);
  const auto omega = omega_I_range(1000, 6000, I);
  for (std::uint64_t m = 1001; m <= 6000; ++m) ASSERT_EQ(omega[m - 1001], oracle::omega_in(m, I.lo, I.hi)) << m;
}

TEST(Rough, MertensProductAndDensity) {
  const auto I = PrimeInterval::from_log(16, 0.25);
  EXPECT_NEAR(mertens_product(I), 0.30620230447151675, 1e-15);
  EXPECT_EQ(primes_in(I).size(), 425u);
  const auto rd = rough_density(100'000, I);
  EXPECT_EQ(rd.empirical, 30542u);
  EXPECT_LE(std::abs(static_cast<double>(rd.empirical) - rd.predicted), 0.05 * 100'000);
}

TEST(Rough, EmptyIntervalCountsEverything) {
  const PrimeInterval empty{10.0, 10.0};
  EXPECT_EQ(mertens_product(empty), 1.0);
  EXPECT_EQ(rough_density(500, empty).empirical, 500u);
  EXPECT_FALSE(in_S_rho(30, empty));
}

TEST(Rough, SieveBudget) {
  EXPECT_EQ(code_of([] { primes_in(PrimeInterval{2, 2e8}); }), Errc::SieveBudgetExceeded);
}
