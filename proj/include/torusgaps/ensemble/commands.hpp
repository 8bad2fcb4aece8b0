#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusgaps/core/sampling.hpp"
#include "torusgaps/diophantine/eight_tuple_count.hpp"
#include "torusgaps/diophantine/rough.hpp"
#include "torusgaps/diophantine/t_quadruples.hpp"
#include "torusgaps/dirichlet/gstar.hpp"
#include "torusgaps/dirichlet/mean_value.hpp"
#include "torusgaps/dirichlet/ramare.hpp"
#include "torusgaps/ensemble/cache.hpp"
#include "torusgaps/ensemble/csv.hpp"
#include "torusgaps/stats/deviation.hpp"
#include "torusgaps/stats/smoothed.hpp"

namespace torusgaps {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitPartialFailure = 1,
  kExitConfigInvalid = 2,
  kExitResourceBudget = 3,
};

inline int exit_code_for(const Error& e) {
  if (e.is_budget()) return kExitResourceBudget;
  switch (e.code()) {
    case Errc::InvalidArgument:
    case Errc::NonPositive:
    case Errc::NonPositiveDefinite:
    case Errc::WrongSymmetryClass:
    case Errc::EmptyBox:
    case Errc::BadDelta:
    case Errc::ConfigInvalid:
    case Errc::IndexOutOfFundamentalDomain:
    case Errc::CutoffExceedsSpectrum:
      return kExitConfigInvalid;
    default:
      return kExitPartialFailure;
  }
}

struct CommandResult {
  int exit_code = kExitOk;
  std::string csv;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> warnings;
};

inline nlohmann::json form_json(const ReducedForm& f) {
  return {{"a1", f.a1()}, {"a2", f.a2()}, {"a3", f.a3()}, {"class", class_name(f.symmetry_class())}};
}

// ---------------------------------------------------------------- spectrum

struct SpectrumConfig {
  ReducedForm form;
  double n;
  std::optional<fs::path> cache_dir;
};

inline CommandResult run_spectrum(const SpectrumConfig& cfg) {
  SpectrumCache cache(cfg.cache_dir);
  const Spectrum s = cache.get(cfg.form, cfg.n);
  CsvTable table({"index", "value"});
  const auto values = s.values();
  for (std::size_t i = 0; i < values.size(); ++i) table.add_row({csv_num(std::uint64_t{i + 1}), csv_num(values[i])});
  const double tol = weyl_tolerance(cfg.form, cfg.n);
  const double dev = static_cast<double>(s.count()) - cfg.n;
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"count", s.count()}, {"weyl_deviation", dev}, {"weyl_tolerance", tol},
               {"weyl_pass", std::abs(dev) <= tol}, {"cache_hits", cache.hits()}};
  r.warnings = cache.warnings();
  r.exit_code = std::abs(dev) <= tol ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- pairs

struct PairsConfig {
  ReducedForm form;
  double n;
  double lo = 0.0;
  double delta;  // interval [lo, lo + delta]
  double tolerance = 0.25;
  bool verify = false;
  std::optional<fs::path> cache_dir;
};

inline std::uint64_t brute_force_pairs(std::span<const double> v, const Interval& interval) {
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (j != k && interval.contains(v[j] - v[k])) ++count;
    }
  }
  return count;
}

inline CommandResult run_pairs(const PairsConfig& cfg) {
  if (!(cfg.delta >= 0.0)) throw Error(Errc::InvalidArgument, "delta must be nonnegative");
  SpectrumCache cache(cfg.cache_dir);
  const Spectrum s = cache.get(cfg.form, cfg.n);
  const Interval interval{cfg.lo, cfg.lo + cfg.delta, Bounds::Closed};
  const PairReport rep = pair_statistic(s, cfg.n, interval);
  const double reference = cfg.delta;
  const double rel_dev = reference > 0.0 ? (rep.statistic - reference) / reference : 0.0;
  bool pass = std::abs(rep.statistic - reference) <= cfg.tolerance * reference;
  std::string oracle = "";
  if (cfg.verify) {
    if (s.count() > 20'000) throw Error(Errc::BudgetExceeded, "--verify is limited to 20000 values");
    const auto brute = brute_force_pairs(s.values().first(s.count_up_to(cfg.n)), interval);
    oracle = csv_num(brute);
    pass = pass && brute == rep.raw_pairs;
  }
  CsvTable table({"a1", "a2", "a3", "class", "N", "lo", "hi", "raw_pairs", "statistic", "reference", "rel_dev",
                  "tolerance", "oracle_raw_pairs", "pass"});
  table.add_row({csv_num(cfg.form.a1()), csv_num(cfg.form.a2()), csv_num(cfg.form.a3()),
                 class_name(cfg.form.symmetry_class()), csv_num(cfg.n), csv_num(interval.lo), csv_num(interval.hi),
                 csv_num(rep.raw_pairs), csv_num(rep.statistic), csv_num(reference), csv_num(rel_dev),
                 csv_num(cfg.tolerance), oracle, csv_bool(pass)});
  CommandResult r;
  r.csv = table.text();
  const Regime regime = regime_of(cfg.n, std::max(cfg.delta, 1e-300));
  r.summary = {{"raw_pairs", rep.raw_pairs}, {"statistic", rep.statistic}, {"pass", pass},
               {"regime", regime.label()}, {"eta", regime.eta()}};
  if (cfg.verify) r.summary["oracle_raw_pairs"] = std::stoull(oracle);
  r.warnings = cache.warnings();
  r.exit_code = pass ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- smoothed

struct SmoothedConfig {
  ReducedForm form;
  double m;
  double t;
  double window_delta = 0.05;
  double tolerance = 0.25;
};

inline CommandResult run_smoothed(const SmoothedConfig& cfg) {
  const Window v = make_window(WindowKind::VStyle, cfg.window_delta);
  const Window w = make_window(WindowKind::WStyle, cfg.window_delta);
  const double g = smoothed_pair_statistic(cfg.form, cfg.m, cfg.t, v, w);
  const double main = smoothed_main_term(v, w, cfg.m, cfg.t);
  const double ratio = g / main;
  const bool pass = std::abs(ratio - 1.0) <= cfg.tolerance;
  CsvTable table({"a1", "a2", "a3", "M", "T", "window_delta", "G", "main_term", "ratio", "tolerance", "pass"});
  table.add_row({csv_num(cfg.form.a1()), csv_num(cfg.form.a2()), csv_num(cfg.form.a3()), csv_num(cfg.m),
                 csv_num(cfg.t), csv_num(cfg.window_delta), csv_num(g), csv_num(main), csv_num(ratio),
                 csv_num(cfg.tolerance), csv_bool(pass)});
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"G", g}, {"main_term", main}, {"ratio", ratio}, {"pass", pass},
               {"ft0_v", v.ft_at_zero()}, {"ft0_w", w.ft_at_zero()}};
  r.exit_code = pass ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- diophantine

inline std::string box_list(const std::array<AbsBox, 4>& boxes) {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0) s += ';';
    s += std::to_string(boxes[i].lo) + ":" + std::to_string(boxes[i].hi);
  }
  return s;
}

inline CommandResult run_count8(const OctupleCountParams& p) {
  const OctupleCounts c = count_8tuples(p);
  CsvTable table({"stratum", "a_boxes", "b_boxes", "det_lo", "det_hi", "T", "M", "eps_exponent", "count"});
  const std::string ab = box_list(p.boxes.a), bb = box_list(p.boxes.b);
  auto row = [&](const char* stratum, std::uint64_t n) {
    table.add_row({stratum, ab, bb, csv_num(std::int64_t{p.det_lo}), csv_num(std::int64_t{p.det_hi}), csv_num(p.t),
                   csv_num(p.m), csv_num(p.eps_exponent), csv_num(n)});
  };
  row("zero_coordinate", c.zero_coordinate);
  row("zero_det", c.zero_det);
  row("generic", c.generic);
  row("total", c.total());
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"zero_coordinate", c.zero_coordinate}, {"zero_det", c.zero_det}, {"generic", c.generic},
               {"total", c.total()}};
  return r;
}

struct TquadConfig {
  double alpha;
  double n;
  double delta;
};

inline CommandResult run_tquad(const TquadConfig& cfg) {
  const TQuadResult t = t_quadruples_rect(cfg.alpha, cfg.n, cfg.delta, false);
  std::uint64_t spectral = 0;
  if (cfg.delta >= 0.0) {
    const Spectrum s = enumerate_rectangular(rectangular_form(cfg.alpha, 1.0), cfg.n);
    spectral = pair_statistic(s, cfg.n, Interval{0.0, cfg.delta, Bounds::Closed}).raw_pairs;
  }
  const bool pass = spectral == t.count;
  CsvTable table({"alpha", "N", "delta", "tquad_count", "spectral_raw_pairs", "pass"});
  table.add_row({csv_num(cfg.alpha), csv_num(cfg.n), csv_num(cfg.delta), csv_num(t.count), csv_num(spectral),
                 csv_bool(pass)});
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"tquad_count", t.count}, {"spectral_raw_pairs", spectral}, {"pass", pass}};
  r.exit_code = pass ? kExitOk : kExitPartialFailure;
  return r;
}

struct RoughConfig {
  std::uint64_t d = 100'000;
  double log_n = 16.0;
  double rho = 0.25;
  double tolerance = 0.05;  // on |empirical - predicted| / D
};

inline CommandResult run_rough(const RoughConfig& cfg) {
  const PrimeInterval interval = PrimeInterval::from_log(cfg.log_n, cfg.rho);
  const RoughDensity rd = rough_density(cfg.d, interval);
  const double pn = mertens_product(interval);
  const double diff = std::abs(static_cast<double>(rd.empirical) - rd.predicted) / static_cast<double>(cfg.d);
  const bool pass = diff <= cfg.tolerance;
  const double mertens_estimate = interval.empty() ? 1.0 : std::log(interval.lo) / std::log(interval.hi);
  CsvTable table({"D", "log_N", "rho", "I_lo", "I_hi", "P_N", "mertens_estimate", "empirical", "predicted",
                  "abs_diff_over_D", "tolerance", "pass"});
  table.add_row({csv_num(cfg.d), csv_num(cfg.log_n), csv_num(cfg.rho), csv_num(interval.lo), csv_num(interval.hi),
                 csv_num(pn), csv_num(mertens_estimate), csv_num(rd.empirical), csv_num(rd.predicted), csv_num(diff),
                 csv_num(cfg.tolerance), csv_bool(pass)});
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"P_N", pn}, {"empirical", rd.empirical}, {"predicted", rd.predicted}, {"pass", pass}};
  r.exit_code = pass ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- dirichlet

struct SweepConfig {
  std::uint64_t d = 10;
  std::uint64_t d_prime = 15;
  double y_min = -10.0;
  double y_max = 10.0;
  int steps = 101;
};

inline CommandResult run_sweep(const SweepConfig& cfg) {
  if (cfg.steps < 1 || !(cfg.y_max >= cfg.y_min) || cfg.d == 0 || cfg.d_prime <= cfg.d) {
    throw Error(Errc::InvalidArgument, "sweep needs steps >= 1, y_max >= y_min and 0 < D < D'");
  }
  CsvTable table({"y", "abs_G", "abs_Gstar", "error", "bound", "pass"});
  bool all = true;
  double worst = 0.0;
  for (int i = 0; i < cfg.steps; ++i) {
    const double y = cfg.steps == 1 ? cfg.y_min : cfg.y_min + (cfg.y_max - cfg.y_min) * i / (cfg.steps - 1);
    const auto p = partial_summation_point(y, cfg.d, cfg.d_prime);
    const bool pass = p.error <= p.bound;
    all = all && pass;
    worst = std::max(worst, p.error / (1.0 + std::abs(y)));
    table.add_row({csv_num(y), csv_num(p.abs_g), csv_num(p.abs_gstar), csv_num(p.error), csv_num(p.bound),
                   csv_bool(pass)});
  }
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"max_error_over_1_plus_abs_y", worst}, {"pass", all}};
  r.exit_code = all ? kExitOk : kExitPartialFailure;
  return r;
}

inline CommandResult run_ramare(const RamareParams& p) {
  const RamareSplit s = ramare_split(p);
  const double limit = 1e-9 * static_cast<double>(std::max<std::uint64_t>(s.term_count, 1000));
  bool pass = s.residual <= limit && s.d_support_ok;
  std::string exact = "";
  if (p.y == 0.0) {
    const RamareExact e = ramare_split_exact(p);
    exact = std::to_string(e.residual());
    pass = pass && e.residual() == 0;
  }
  CsvTable table({"y", "D", "log_N", "rho", "kappa", "delta_prime", "target_re", "target_im", "main_re", "main_im",
                  "boundary_re", "boundary_im", "squares_re", "squares_im", "residual", "terms", "d_support_ok",
                  "exact_residual", "pass"});
  table.add_row({csv_num(p.y), csv_num(p.d), csv_num(p.log_n), csv_num(p.rho), csv_num(p.kappa),
                 csv_num(p.delta_prime), csv_num(s.target.real()), csv_num(s.target.imag()), csv_num(s.main.real()),
                 csv_num(s.main.imag()), csv_num(s.boundary.real()), csv_num(s.boundary.imag()),
                 csv_num(s.squares.real()), csv_num(s.squares.imag()), csv_num(s.residual), csv_num(s.term_count),
                 csv_bool(s.d_support_ok), exact, csv_bool(pass)});
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"residual", s.residual}, {"terms", s.term_count}, {"boundary_coefficients", s.d_coefficients.size()},
               {"pass", pass}};
  r.exit_code = pass ? kExitOk : kExitPartialFailure;
  return r;
}

struct MeanConfig {
  std::size_t x = 1000;
  double t = 1000.0;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  bool unit = false;  // a_n = 1 instead of random signs
  unsigned workers = 1;
};

inline std::vector<double> random_signs(RngState state, std::size_t x) {
  RngCursor cur(state);
  std::vector<double> a(x);
  for (auto& v : a) v = (cur.next_u64() >> 63) ? 1.0 : -1.0;
  return a;
}

inline CommandResult run_mean(const MeanConfig& cfg) {
  std::vector<MeanValueResult> results(cfg.trials);
  parallel_for_index(cfg.trials, cfg.workers, [&](std::size_t i) {
    const auto a = cfg.unit ? std::vector<double>(cfg.x, 1.0) : random_signs(RngState{cfg.seed, i}, cfg.x);
    results[i] = mean_value_check(a, cfg.t);
  });
  CsvTable table({"trial", "X", "T", "lhs", "rhs", "ratio", "pass"});
  std::size_t violations = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const bool pass = results[i].lhs <= results[i].rhs;
    violations += !pass;
    table.add_row({csv_num(std::uint64_t{i}), csv_num(std::uint64_t{cfg.x}), csv_num(cfg.t), csv_num(results[i].lhs),
                   csv_num(results[i].rhs), csv_num(results[i].lhs / results[i].rhs), csv_bool(pass)});
  }
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"trials", cfg.trials}, {"violations", violations}};
  r.exit_code = violations == 0 ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- ensemble

struct EnsembleConfig {
  SymmetryClass cls = SymmetryClass::Generic;
  GenericBox generic_box{{1, 2}, {0, 1}, {2, 3}};
  RectangularBox rect_box{{1, 2}, {1, 2}};
  std::size_t samples = 20;
  double n = 1e6;
  double delta = 1e-3;
  double dev = 0.5;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double max_fail_fraction = 0.0;
  std::optional<fs::path> cache_dir;
};

inline std::vector<ModuliSample> draw_samples(const EnsembleConfig& cfg) {
  std::vector<ModuliSample> out;
  out.reserve(cfg.samples);
  for (std::size_t j = 0; j < cfg.samples; ++j) {
    const RngState state{cfg.seed, j};
    out.push_back(cfg.cls == SymmetryClass::Generic ? sample_generic(state, cfg.generic_box)
                                                    : sample_rectangular(state, cfg.rect_box));
  }
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

inline CommandResult run_ensemble(const EnsembleConfig& cfg) {
  if (!(cfg.max_fail_fraction >= 0.0 && cfg.max_fail_fraction <= 1.0)) {
    throw Error(Errc::ConfigInvalid, "--max-fail-fraction must lie in [0, 1]");
  }
  const auto samples = draw_samples(cfg);
  SpectrumCache cache(cfg.cache_dir);
  const DeviationResult res = deviation_experiment(samples, cfg.n, cfg.delta, cfg.dev, cfg.workers,
                                                   [&](const ReducedForm& f, double n) { return cache.get(f, n); });
  CsvTable table({"sample_id", "a1", "a2", "a3", "N", "delta", "raw_pairs", "statistic", "rel_dev", "pass"});
  std::vector<double> ratios;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& row : res.rows) {
    const ReducedForm& f = *row.form;
    if (row.failed()) {
      table.add_row({csv_num(std::uint64_t{row.sample_id}), csv_num(f.a1()), csv_num(f.a2()), csv_num(f.a3()),
                     csv_num(row.cutoff), csv_num(row.delta), "", "", "", "error"});
      failures.push_back({{"sample_id", row.sample_id}, {"error", row.error}});
      continue;
    }
    ratios.push_back(row.statistic / row.delta);
    table.add_row({csv_num(std::uint64_t{row.sample_id}), csv_num(f.a1()), csv_num(f.a2()), csv_num(f.a3()),
                   csv_num(row.cutoff), csv_num(row.delta), csv_num(row.raw_pairs), csv_num(row.statistic),
                   csv_num(row.rel_dev), csv_bool(row.pass)});
  }
  const Regime regime = regime_of(cfg.n, cfg.delta);
  std::size_t outside_half = 0;
  for (double r : ratios) outside_half += (r < 0.5 || r > 1.5);
  CommandResult r;
  r.csv = table.text();
  r.summary = {{"samples", samples.size()},
               {"deviating", res.deviating},
               {"failed", res.failed},
               {"deviation_fraction", res.fraction},
               {"median_ratio", ratios.empty() ? 0.0 : median(ratios)},
               {"ratios_outside_0.5_1.5", outside_half},
               {"regime", regime.label()},
               {"eta", regime.eta()},
               {"cache_hits", cache.hits()},
               {"failures", failures}};
  auto warnings = cache.warnings();
  std::sort(warnings.begin(), warnings.end());
  r.warnings = warnings;
  const bool ok = res.failed == 0 && res.fraction <= cfg.max_fail_fraction;
  r.exit_code = ok ? kExitOk : kExitPartialFailure;
  return r;
}

// ---------------------------------------------------------------- selftest

struct SuiteOutcome {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
};

inline SuiteOutcome suite_substitution(std::uint64_t seed, std::uint64_t trials) {
  SuiteOutcome out{"substitution_residual"};
  RngCursor cur(RngState{seed, 0x5b});
  while (out.trials < trials) {
    std::array<std::int64_t, 8> v{};
    for (auto& x : v) x = cur.next_int(-100, 100);
    // v = (a1, a2, a3, a4, b1, b2, b3, b4); det is chosen so that b1 is integral.
    if (v[5] == 0 || v[6] == 0 || v[7] == 0) continue;
    if (!OctTuple{{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}}.admissible()) continue;
    const i128 det = static_cast<i128>(v[0]) * v[1] * v[2] * v[3] - static_cast<i128>(v[4]) * v[5] * v[6] * v[7];
    ++out.trials;
    try {
      if (!substitution_residual(v[0], v[1], v[2], v[3], v[5], v[6], v[7], det).is_zero()) ++out.failures;
    } catch (const Error&) {
      ++out.failures;
    }
  }
  return out;
}

inline SuiteOutcome suite_transforms(std::uint64_t seed, std::uint64_t trials) {
  SuiteOutcome out{"transform_roundtrips"};
  RngCursor cur(RngState{seed, 0x7a});
  for (; out.trials < trials; ++out.trials) {
    const i128 x1 = cur.next_int(-1000, 1000), y1 = cur.next_int(-1000, 1000);
    const i128 x2 = cur.next_int(-1000, 1000), y2 = cur.next_int(-1000, 1000);
    const auto t = quadruple_transform(x1, y1, x2, y2);
    const bool ok1 = inverse_quadruple_transform(t) == LatticePair{x1, y1, x2, y2} && t.a1 + t.a2 == 2 * y1;
    const IndexPair p{cur.next_int(1, 1000), cur.next_int(0, 1000), cur.next_int(1, 1000), cur.next_int(0, 1000)};
    const TQuad q = to_tquad(p);
    const bool ok2 = from_tquad(q) == p && q.parity_ok() && q.t2 > std::abs(q.t1) && q.t4 >= std::abs(q.t3);
    if (!ok1 || !ok2) ++out.failures;
  }
  return out;
}

inline SuiteOutcome suite_det_dual(std::uint64_t seed, std::uint64_t trials) {
  SuiteOutcome out{"det_invariants_dual"};
  RngCursor cur(RngState{seed, 0xde});
  for (; out.trials < trials; ++out.trials) {
    OctTuple o;
    for (auto& x : o.a) x = cur.next_int(-1000, 1000);
    for (auto& x : o.b) x = cur.next_int(-1000, 1000);
    const DetInvariants inv = det_invariants(o);
    const i128 u1 = o.a[0] * o.a[1], v1 = o.b[0] * o.b[1], w1 = o.a[0] * o.b[1] + o.b[0] * o.a[1];
    const i128 u2 = o.a[2] * o.a[3], v2 = o.b[2] * o.b[3], w2 = o.a[2] * o.b[3] + o.b[2] * o.a[3];
    const bool ok = inv.det == u1 * u2 - v1 * v2 && inv.det1 == u1 * w2 - w1 * v2 && inv.det2 == w1 * u2 - v1 * w2;
    if (!ok) ++out.failures;
  }
  return out;
}

inline SuiteOutcome suite_ramare(std::uint64_t seed, std::uint64_t trials) {
  SuiteOutcome out{"ramare_reconstruction"};
  RngCursor cur(RngState{seed, 0x4a});
  for (; out.trials < trials; ++out.trials) {
    RamareParams p;
    p.d = static_cast<double>(cur.next_int(100, 20'000));
    p.y = out.trials == 0 ? 0.0 : -1000.0 + 2000.0 * cur.next_uniform();
    const RamareSplit s = ramare_split(p);
    bool ok = s.residual <= 1e-6 && s.d_support_ok;
    if (p.y == 0.0) ok = ok && ramare_split_exact(p).residual() == 0;
    if (!ok) ++out.failures;
  }
  return out;
}

struct SelftestConfig {
  std::uint64_t seed = 1;
  std::uint64_t scale = 1;  // multiplies the default trial counts
};

inline CommandResult run_selftest(const SelftestConfig& cfg) {
  const std::vector<SuiteOutcome> suites = {
      suite_substitution(cfg.seed, 10'000 * cfg.scale), suite_transforms(cfg.seed, 10'000 * cfg.scale),
      suite_det_dual(cfg.seed, 100'000 * cfg.scale), suite_ramare(cfg.seed, 20 * cfg.scale)};
  CsvTable table({"suite", "trials", "failures", "pass"});
  bool all = true;
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& s : suites) {
    const bool pass = s.failures == 0;
    all = all && pass;
    table.add_row({s.name, csv_num(s.trials), csv_num(s.failures), csv_bool(pass)});
    summary[s.name] = {{"trials", s.trials}, {"failures", s.failures}};
  }
  CommandResult r;
  r.csv = table.text();
  r.summary = summary;
  r.exit_code = all ? kExitOk : kExitPartialFailure;
  return r;
}

}  // namespace torusgaps
