#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torusgaps/core/sampling.hpp"
#include "torusgaps/stats/deviation.hpp"
#include "torusgaps/stats/pair_statistic.hpp"
#include "torusgaps/stats/smoothed.hpp"
#include "torusgaps/stats/window.hpp"

using namespace torusgaps;

namespace {

struct ZeroWindow {
  double operator()(double) const { return 0.0; }
  double support_lo() const { return -1.0; }
  double support_hi() const { return 2.0; }
};

}  // namespace

TEST(PairStatistic, EqualPairCountsBothOrders) {
  const Spectrum s = enumerate(validate_form(1, 0, 1), 2);
  const auto r = pair_statistic(s, 2, Interval{0.0, 0.1, Bounds::Closed});
  EXPECT_EQ(r.raw_pairs, 2u);
  EXPECT_DOUBLE_EQ(r.statistic, 1.0);
}

TEST(PairStatistic, EmptyIntervalAndSwapSymmetry) {
  const Spectrum s = enumerate(validate_form(1.2, 0.7, 1.9), 2000);
  EXPECT_EQ(pair_statistic(s, 2000, Interval{0.3, 0.1, Bounds::Closed}).raw_pairs, 0u);
  EXPECT_EQ(pair_statistic(s, 2000, Interval{0.1, 0.1, Bounds::LeftOpen}).raw_pairs, 0u);
  for (double d : {0.0, 0.01, 0.2, 1.5}) {
    EXPECT_EQ(pair_statistic(s, 2000, Interval{0.0, d, Bounds::Closed}).raw_pairs,
              pair_statistic(s, 2000, Interval{-d, 0.0, Bounds::Closed}).raw_pairs);
  }
}

TEST(PairStatistic, TwoPointerMatchesDoubleLoop) {
  RngCursor cur(RngState{9, 0});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> v;
    const int n = 50 + trial * 10;
    for (int i = 0; i < n; ++i) {
      // Coarse grid so that ties and boundary hits occur.
      v.push_back(0.25 * static_cast<double>(cur.next_int(1, 4 * n)) / 4.0);
    }
    std::sort(v.begin(), v.end());
    const double lo = 0.0625 * static_cast<double>(cur.next_int(-8, 8));
    const double hi = lo + 0.0625 * static_cast<double>(cur.next_int(0, 16));
    EXPECT_EQ(count_ordered_pairs(v, Interval{lo, hi, Bounds::Closed}), oracle::pairs(v, lo, hi));
    std::uint64_t open = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (j != k && v[j] - v[k] > lo && v[j] - v[k] <= hi) ++open;
    EXPECT_EQ(count_ordered_pairs(v, Interval{lo, hi, Bounds::LeftOpen}), open);
  }
}

TEST(PairStatistic, SpectrumAgainstOracle) {
  const auto f = validate_form(1, 0, 1);
  const Spectrum s = enumerate(f, 1000);
  const std::vector<double> v(s.values().begin(), s.values().end());
  EXPECT_EQ(pair_statistic(s, 1000, Interval{0.0, 0.05, Bounds::Closed}).raw_pairs, oracle::pairs(v, 0.0, 0.05));
  const auto g = rectangular_form(1.37, 1.0);
  const Spectrum r = enumerate(g, 800);
  const std::vector<double> w(r.values().begin(), r.values().end());
  EXPECT_EQ(pair_statistic(r, 800, Interval{0.0, 0.3, Bounds::Closed}).raw_pairs, oracle::pairs(w, 0.0, 0.3));
}

TEST(PairStatistic, Errors) {
  const Spectrum s = enumerate(validate_form(1, 0, 1), 10);
  EXPECT_THROW(pair_statistic(s, 20, Interval{0, 1, Bounds::Closed}), Error);
  EXPECT_THROW(pair_statistic(s, 0, Interval{0, 1, Bounds::Closed}), Error);
  EXPECT_THROW(pair_statistic(s, 5, Interval{0, INFINITY, Bounds::Closed}), Error);
}

TEST(Window, VStyleIntegralAndSupport) {
  const Window v = make_window(WindowKind::VStyle, 0.05);
  EXPECT_GE(v.ft_at_zero(), 1.0);
  EXPECT_LE(v.ft_at_zero(), 1.0 + 0.05 / 3);
  EXPECT_NEAR(v.ft_at_zero(), 1.0 + 0.05 / 8, 1e-9);
  EXPECT_GE(v(0.5), 1.0 - 1e-15);
  EXPECT_EQ(v(-1.0), 0.0);
  for (double x = 0.0; x <= 1.0; x += 0.01) EXPECT_GE(v(x), 1.0 - 1e-12) << x;
}

TEST(Window, WStyleIntegral) {
  const Window w = make_window(WindowKind::WStyle, 0.05);
  EXPECT_NEAR(w.ft_at_zero(), 1.0 + 0.05 / 4, 1e-9);
  EXPECT_EQ(w(w.support_lo() - 1e-9), 0.0);
  EXPECT_EQ(w(w.support_hi() + 1e-9), 0.0);
}

TEST(Window, WMinusSupport) {
  const Window w = make_window(WindowKind::WMinus, 0.05);
  EXPECT_DOUBLE_EQ(w(0.5), 1.0);
  EXPECT_GE(w(1 - 2 * 0.05), 0.0);
  EXPECT_LE(w(1 - 2 * 0.05), 1.0);
  EXPECT_EQ(w(1.0), 0.0);
  EXPECT_EQ(w(0.0), 0.0);
  EXPECT_DOUBLE_EQ(w(0.05), 1.0);
  EXPECT_DOUBLE_EQ(w(0.8), 1.0);
}

TEST(Window, WPlusCoversUnitInterval) {
  const Window w = make_window(WindowKind::WPlus, 0.05);
  for (double x = 0.0; x <= 1.0; x += 0.01) EXPECT_DOUBLE_EQ(w(x), 1.0);
  EXPECT_EQ(w(-0.05), 0.0);
  EXPECT_EQ(w(1.05), 0.0);
}

TEST(Window, ValuesInUnitRangeAndBadDelta) {
  for (auto k : {WindowKind::VStyle, WindowKind::WStyle, WindowKind::WPlus, WindowKind::WMinus}) {
    const Window w = make_window(k, 0.1);
    for (double x = -0.5; x <= 1.5; x += 0.001) {
      ASSERT_GE(w(x), 0.0);
      ASSERT_LE(w(x), 1.0 + 1e-15);
    }
  }
  try {
    make_window(WindowKind::VStyle, 0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadDelta);
  }
  EXPECT_THROW(make_window(WindowKind::WPlus, 0.0), Error);
}

TEST(Smoothed, ZeroWindowGivesZero) {
  const Window v = make_window(WindowKind::VStyle, 0.05);
  EXPECT_EQ(smoothed_pair_statistic(validate_form(1, 0, 1), 20, 5, v, ZeroWindow{}), 0.0);
}

TEST(Smoothed, MatchesBruteForceDoubleLoop) {
  const Window v = make_window(WindowKind::VStyle, 0.05);
  const Window w = make_window(WindowKind::WStyle, 0.05);
  const auto f = validate_form(1, 0, 1);
  const double g = smoothed_pair_statistic(f, 20, 5, v, w);
  EXPECT_NEAR(g, oracle::smoothed(f, 20, 5, v, w), 1e-9 * std::max(1.0, g));
  const auto h = validate_form(1.31, 0.47, 2.23);
  const double gh = smoothed_pair_statistic(h, 12, 30, v, w);
  EXPECT_NEAR(gh, oracle::smoothed(h, 12, 30, v, w), 1e-9 * std::max(1.0, gh));
}

TEST(Smoothed, MainTermAtModerateScale) {
  const Window v = make_window(WindowKind::VStyle, 0.05);
  const Window w = make_window(WindowKind::WStyle, 0.05);
  const auto s = sample_generic(RngState{2, 0}, GenericBox{{1, 2}, {0, 1}, {2, 3}});
  const double ratio = smoothed_pair_statistic(s.form, 200, 200, v, w) / smoothed_main_term(v, w, 200, 200);
  EXPECT_NEAR(ratio, 1.0, 0.25);
}

TEST(Smoothed, PreconditionsAndLatticePoints) {
  const Window v = make_window(WindowKind::VStyle, 0.05);
  EXPECT_THROW(smoothed_pair_statistic(validate_form(1, 0, 1), 1.0, 5, v, v), Error);
  EXPECT_THROW(smoothed_pair_statistic(validate_form(1, 0, 1), 5, 0.5, v, v), Error);
  const auto pts = lattice_points_in_ellipse(validate_form(1, 0, 1), 2.0);
  // q/D <= 2 means x^2 + y^2 <= 4/pi: the origin and the four unit vectors.
  EXPECT_EQ(pts.size(), 5u);
  EXPECT_EQ(pts.front().value, 0.0);
  try {
    lattice_points_in_ellipse(validate_form(1, 0, 1), 1e6, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_budget());
  }
}

TEST(Deviation, NoSamples) {
  const auto r = deviation_experiment({}, 1e3, 1e-2, 0.5);
  EXPECT_EQ(r.fraction, 0.0);
  EXPECT_TRUE(r.rows.empty());
}

TEST(Deviation, RowsAreOrderedAndWorkerIndependent) {
  std::vector<ModuliSample> samples;
  for (std::uint64_t j = 0; j < 6; ++j) samples.push_back(sample_generic(RngState{4, j}, GenericBox{{1, 2}, {0, 1}, {2, 3}}));
  const auto a = deviation_experiment(samples, 2e4, 1e-2, 0.5, 1);
  const auto b = deviation_experiment(samples, 2e4, 1e-2, 0.5, 4);
  ASSERT_EQ(a.rows.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(a.rows[i].sample_id, i);
    EXPECT_EQ(a.rows[i].raw_pairs, b.rows[i].raw_pairs);
    EXPECT_EQ(a.rows[i].pass, std::abs(a.rows[i].statistic - 1e-2) <= 0.5e-2);
  }
  EXPECT_EQ(a.fraction, b.fraction);
}

TEST(Deviation, ProviderFailureIsRecorded) {
  std::vector<ModuliSample> samples;
  for (std::uint64_t j = 0; j < 3; ++j) samples.push_back(sample_rectangular(RngState{4, j}, RectangularBox{{1, 2}, {1, 2}}));
  const auto r = deviation_experiment(samples, 1e3, 1e-2, 0.5, 2, [](const ReducedForm& f, double n) {
    if (f.a1() > 0.0 && n > 0.0) throw Error(Errc::IoError, "disk gone");
    return enumerate(f, n);
  });
  EXPECT_EQ(r.failed, 3u);
  EXPECT_EQ(r.fraction, 0.0);
  for (const auto& row : r.rows) EXPECT_TRUE(row.failed());
}

TEST(Deviation, Validation) {
  EXPECT_THROW(deviation_experiment({}, 1.0, 1e-2, 0.5), Error);
  EXPECT_THROW(deviation_experiment({}, 1e3, 0.0, 0.5), Error);
  EXPECT_THROW(deviation_experiment({}, 1e3, 1e-2, 1.0), Error);
}

TEST(Deviation, RegimeLabels) {
  EXPECT_STREQ(regime_of(1e6, 1e-3).label(), "generic");
  EXPECT_NEAR(regime_of(1e6, 1e-3).eta(), 0.5, 1e-12);
  EXPECT_STREQ(regime_of(1e6, 1.0).label(), "rectangular-only");
  EXPECT_STREQ(regime_of(1e6, 1e-7).label(), "outside");
}
