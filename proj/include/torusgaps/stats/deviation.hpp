#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torusgaps/core/parallel.hpp"
#include "torusgaps/core/sampling.hpp"
#include "torusgaps/stats/pair_statistic.hpp"

namespace torusgaps {

/// Supplies the spectrum of a form up to a cutoff (enumeration or a cache).
using SpectrumProvider = std::function<Spectrum(const ReducedForm&, double)>;

struct DeviationRow {
  std::size_t sample_id = 0;
  std::optional<ReducedForm> form;
  double cutoff = 0.0;
  double delta = 0.0;
  std::uint64_t raw_pairs = 0;
  double statistic = 0.0;
  double rel_dev = 0.0;  // (P - delta) / delta
  bool pass = false;
  std::string error;  // nonempty if the sample failed

  bool failed() const noexcept { return !error.empty(); }
};

struct DeviationResult {
  double fraction = 0.0;  // deviating / successful samples
  std::size_t deviating = 0;
  std::size_t failed = 0;
  std::vector<DeviationRow> rows;
};

/// Which theorem range a (N, Delta) pair lies in. Writing Delta = N^(-1+eta_lower)
/// and Delta = N^(-eta_upper), the generic statement needs both exponents
/// positive and the rectangular one only the first.
struct Regime {
  double eta_lower;
  double eta_upper;

  double eta() const noexcept { return std::min(eta_lower, eta_upper); }
  bool generic_range() const noexcept { return eta_lower > 0.0 && eta_upper > 0.0; }
  bool rectangular_range() const noexcept { return eta_lower > 0.0 && eta_upper >= 0.0; }
  const char* label() const noexcept {
    if (generic_range()) return "generic";
    if (rectangular_range()) return "rectangular-only";
    return "outside";
  }
};

inline Regime regime_of(double n, double delta) {
  const double ln = std::log(n);
  const double ld = std::log(delta);
  return Regime{1.0 + ld / ln, -ld / ln};
}

/// Computes P(alpha, N, [0, Delta]) per sample and the fraction with
/// |P - Delta| > dev * Delta. Rows come back in sample order regardless of
/// the worker count. A sample whose spectrum cannot be produced is recorded
/// as failed and excluded from the fraction.
inline DeviationResult deviation_experiment(const std::vector<ModuliSample>& samples, double n, double delta,
                                            double dev, unsigned workers = 1,
                                            const SpectrumProvider& provider = {}) {
  if (!(n > 1.0) || !std::isfinite(n)) throw Error(Errc::InvalidArgument, "N must exceed 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(Errc::InvalidArgument, "Delta must lie in (0, 1]");
  if (!(dev > 0.0 && dev < 1.0)) throw Error(Errc::InvalidArgument, "deviation threshold must lie in (0, 1)");

  DeviationResult result;
  result.rows.resize(samples.size());
  const Interval interval{0.0, delta, Bounds::Closed};
  parallel_for_index(samples.size(), workers, [&](std::size_t i) {
    DeviationRow& row = result.rows[i];
    row.sample_id = i;
    row.form = samples[i].form;
    row.cutoff = n;
    row.delta = delta;
    try {
      const Spectrum spectrum = provider ? provider(samples[i].form, n) : enumerate(samples[i].form, n);
      const PairReport report = pair_statistic(spectrum, n, interval);
      row.raw_pairs = report.raw_pairs;
      row.statistic = report.statistic;
      row.rel_dev = (report.statistic - delta) / delta;
      row.pass = std::abs(report.statistic - delta) <= dev * delta;
    } catch (const std::exception& e) {
      row.error = e.what();
      if (row.error.empty()) row.error = "unknown error";
    }
  });

  std::size_t ok = 0;
  for (const auto& row : result.rows) {
    if (row.failed()) {
      ++result.failed;
    } else {
      ++ok;
      if (!row.pass) ++result.deviating;
    }
  }
  result.fraction = ok == 0 ? 0.0 : static_cast<double>(result.deviating) / static_cast<double>(ok);
  return result;
}

}  // namespace torusgaps
