#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusgaps/ensemble/commands.hpp"

using namespace torusgaps;

namespace {

struct Globals {
  std::string out;
  std::string manifest;
  std::string cache_dir;
  bool no_cache = false;
  unsigned workers = 1;
};

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::ConfigInvalid, what); }

ReducedForm form_from(const std::vector<double>& alpha, const std::string& cls) {
  const SymmetryClass c = parse_class(cls);
  if (c == SymmetryClass::Rectangular) {
    if (alpha.size() == 2) return rectangular_form(alpha[0], alpha[1]);
    if (alpha.size() == 3) return validate_form(alpha[0], alpha[1], alpha[2], c);
    config_error("--alpha takes a1,a3 (or a1,0,a3) for rectangular forms");
  }
  if (alpha.size() != 3) config_error("--alpha takes a1,a2,a3");
  return validate_form(alpha[0], alpha[1], alpha[2], c);
}

std::uint64_t to_count(double x, const char* name) {
  if (!(x >= 0.0) || x > 1e15 || x != std::floor(x)) config_error(std::string(name) + " must be a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

std::optional<fs::path> cache_dir_of(const Globals& g) {
  if (g.no_cache) return std::nullopt;
  const fs::path dir = resolve_cache_dir(g.cache_dir);
  if (dir.empty()) return std::nullopt;
  return dir;
}

nlohmann::json options_json(const CLI::App* app) {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    j[opt->get_name()] = opt->results();
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral gap statistics of flat tori"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-o,--out", g.out, "CSV report path (default: stdout)");
  app.add_option("--manifest", g.manifest, "JSON manifest path (default: <out>.manifest.json)");
  app.add_option("--cache-dir", g.cache_dir, "spectrum cache directory (TORUSGAPS_CACHE overrides)");
  app.add_flag("--no-cache", g.no_cache, "disable the spectrum cache");
  app.add_option("-w,--workers", g.workers, "worker threads")->check(CLI::Range(1u, 1024u));

  // spectrum
  std::vector<double> alpha;
  std::string cls = "generic";
  double n = 0.0;
  auto* spectrum = app.add_subcommand("spectrum", "enumerate normalized eigenvalues <= N");
  spectrum->add_option("--alpha", alpha, "form coefficients a1,a2,a3")->delimiter(',')->required();
  spectrum->add_option("--class", cls, "generic or rectangular");
  spectrum->add_option("-n,--n", n, "cutoff N")->required();

  // pairs
  PairsConfig pairs_cfg{validate_form(1, 0, 1), 0, 0, 0, 0.25, false, std::nullopt};
  auto* pairs = app.add_subcommand("pairs", "pair statistic P(alpha, N, [lo, lo + delta])");
  pairs->add_option("--alpha", alpha, "form coefficients")->delimiter(',')->required();
  pairs->add_option("--class", cls, "generic or rectangular");
  pairs->add_option("-n,--n", n, "cutoff N")->required();
  pairs->add_option("--delta", pairs_cfg.delta, "interval length")->required();
  pairs->add_option("--lo", pairs_cfg.lo, "interval start");
  pairs->add_option("--tolerance", pairs_cfg.tolerance, "relative tolerance against delta");
  pairs->add_flag("--verify", pairs_cfg.verify, "also count pairs with a quadratic double loop");

  // smoothed
  SmoothedConfig sm_cfg{validate_form(1, 0, 1), 0, 0};
  double sm_n = 0.0, sm_delta = 0.0;
  auto* smoothed = app.add_subcommand("smoothed", "smoothed statistic G(M, T) against its main term");
  smoothed->add_option("--alpha", alpha, "form coefficients")->delimiter(',')->required();
  smoothed->add_option("--m", sm_cfg.m, "M");
  smoothed->add_option("--t", sm_cfg.t, "T");
  smoothed->add_option("-n,--n", sm_n, "N (sets M = sqrt(N))");
  smoothed->add_option("--delta", sm_delta, "Delta (sets T = 1/Delta)");
  smoothed->add_option("--window-delta", sm_cfg.window_delta, "window smoothing parameter in (0, 1/8)");
  smoothed->add_option("--tolerance", sm_cfg.tolerance, "tolerance on |ratio - 1|");

  // diophantine
  auto* dioph = app.add_subcommand("diophantine", "exact counting suites");
  dioph->require_subcommand(1);
  OctupleCountParams oct;
  std::vector<std::int64_t> box{1, 8}, a_boxes, b_boxes, det_band{1, 2};
  auto* count8 = dioph->add_subcommand("count8", "count octuples by stratum");
  count8->add_option("--box", box, "lo,hi magnitude box for all coordinates")->delimiter(',');
  count8->add_option("--a-boxes", a_boxes, "lo1,hi1,...,lo4,hi4 for a1..a4")->delimiter(',');
  count8->add_option("--b-boxes", b_boxes, "lo1,hi1,...,lo4,hi4 for b1..b4")->delimiter(',');
  count8->add_option("--det", det_band, "lo,hi band for |Det|")->delimiter(',');
  count8->add_option("--t", oct.t, "T")->required();
  count8->add_option("--m", oct.m, "M")->required();
  count8->add_option("--eps-exponent", oct.eps_exponent, "epsilon factor is M^eps_exponent");

  TquadConfig tq{0, 0, 0};
  auto* tquad = dioph->add_subcommand("tquad", "t-quadruples vs spectral pair count (rectangular)");
  tquad->add_option("--alpha", tq.alpha, "alpha = a1/a3")->required();
  tquad->add_option("-n,--n", tq.n, "cutoff N")->required();
  tquad->add_option("--delta", tq.delta, "gap bound Delta")->required();

  RoughConfig rough_cfg;
  double rough_d = 1e5;
  auto* rough = dioph->add_subcommand("rough", "density of integers without a prime divisor in I");
  rough->add_option("--d", rough_d, "D");
  rough->add_option("--log-n", rough_cfg.log_n, "log N");
  rough->add_option("--rho", rough_cfg.rho, "rho in (0, 1/2)");
  rough->add_option("--tolerance", rough_cfg.tolerance, "tolerance on |empirical - predicted| / D");

  // dirichlet
  auto* dirich = app.add_subcommand("dirichlet", "Dirichlet polynomial checks");
  dirich->require_subcommand(1);
  SweepConfig sw;
  double sw_d = 10, sw_dp = 15;
  auto* sweep = dirich->add_subcommand("sweep", "G(y, D) against G*(1 - 2 pi i y, D', D)");
  sweep->add_option("--d", sw_d, "D");
  sweep->add_option("--d-prime", sw_dp, "D'");
  sweep->add_option("--y-min", sw.y_min, "first frequency");
  sweep->add_option("--y-max", sw.y_max, "last frequency");
  sweep->add_option("--steps", sw.steps, "number of frequencies");

  RamareParams rp;
  auto* ramare = dirich->add_subcommand("ramare", "Ramare identity decomposition");
  ramare->add_option("--y", rp.y, "frequency");
  ramare->add_option("--d", rp.d, "D");
  ramare->add_option("--log-n", rp.log_n, "log N");
  ramare->add_option("--rho", rp.rho, "rho");
  ramare->add_option("--kappa", rp.kappa, "prime box ratio minus one");
  ramare->add_option("--delta-prime", rp.delta_prime, "D' = D (1 + delta')");
  ramare->add_option("--p0", rp.p0, "first prime box edge (default: lower end of I)");

  MeanConfig mean_cfg;
  double mean_x = 1000;
  auto* mean = dirich->add_subcommand("mean", "mean value integral against 3 (T + X) sum |a_n|^2");
  mean->add_option("--x", mean_x, "X (coefficient length)");
  mean->add_option("--t", mean_cfg.t, "T");
  mean->add_option("--trials", mean_cfg.trials, "number of random coefficient vectors");
  mean->add_option("--seed", mean_cfg.seed, "root seed");
  mean->add_flag("--unit", mean_cfg.unit, "use a_n = 1");

  // ensemble
  EnsembleConfig ens;
  std::vector<double> ens_box;
  std::string ens_cls = "generic";
  std::uint64_t ens_seed = 0;
  auto* ensemble = app.add_subcommand("ensemble", "deviation experiment over random tori");
  ensemble->add_option("--class", ens_cls, "generic or rectangular");
  ensemble->add_option("--box", ens_box, "a1lo,a1hi,a2lo,a2hi,a3lo,a3hi (rectangular: a1lo,a1hi,a3lo,a3hi)")
      ->delimiter(',');
  ensemble->add_option("--samples", ens.samples, "number of sampled tori");
  ensemble->add_option("-n,--n", ens.n, "cutoff N")->required();
  ensemble->add_option("--delta", ens.delta, "interval [0, Delta]")->required();
  ensemble->add_option("--dev", ens.dev, "deviation threshold delta in (0, 1)")->required();
  ensemble->add_option("--seed", ens_seed, "root seed")->required();
  ensemble->add_option("--max-fail-fraction", ens.max_fail_fraction, "exit 0 if at most this fraction deviates");

  SelftestConfig st;
  auto* selftest = app.add_subcommand("selftest", "exact identity suites");
  selftest->add_option("--seed", st.seed, "root seed");
  selftest->add_option("--scale", st.scale, "multiplier on trial counts");

  const auto started = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigInvalid;
  }

  CLI::App* leaf = app.get_subcommands().front();
  std::string command = leaf->get_name();
  while (!leaf->get_subcommands().empty()) {
    leaf = leaf->get_subcommands().front();
    command += " " + leaf->get_name();
  }

  CommandResult result;
  std::string error_text;
  try {
    const auto cache = cache_dir_of(g);
    if (spectrum->parsed()) {
      result = run_spectrum({form_from(alpha, cls), n, cache});
    } else if (pairs->parsed()) {
      pairs_cfg.form = form_from(alpha, cls);
      pairs_cfg.n = n;
      pairs_cfg.cache_dir = cache;
      result = run_pairs(pairs_cfg);
    } else if (smoothed->parsed()) {
      sm_cfg.form = form_from(alpha, "generic");
      if (sm_n > 0.0) sm_cfg.m = std::sqrt(sm_n);
      if (sm_delta > 0.0) sm_cfg.t = 1.0 / sm_delta;
      if (!(sm_cfg.m > 0.0) || !(sm_cfg.t > 0.0)) config_error("smoothed needs --m/--t or --n/--delta");
      result = run_smoothed(sm_cfg);
    } else if (count8->parsed()) {
      auto boxes_from = [](const std::vector<std::int64_t>& v, const char* name) {
        if (v.size() != 8) config_error(std::string(name) + " takes eight integers");
        std::array<AbsBox, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = {v[2 * i], v[2 * i + 1]};
        return out;
      };
      if (box.size() != 2) config_error("--box takes lo,hi");
      if (det_band.size() != 2) config_error("--det takes lo,hi");
      oct.boxes = OctupleBoxes::uniform({box[0], box[1]});
      if (!a_boxes.empty()) oct.boxes.a = boxes_from(a_boxes, "--a-boxes");
      if (!b_boxes.empty()) oct.boxes.b = boxes_from(b_boxes, "--b-boxes");
      oct.det_lo = det_band[0];
      oct.det_hi = det_band[1];
      oct.workers = g.workers;
      result = run_count8(oct);
    } else if (tquad->parsed()) {
      result = run_tquad(tq);
    } else if (rough->parsed()) {
      rough_cfg.d = to_count(rough_d, "--d");
      result = run_rough(rough_cfg);
    } else if (sweep->parsed()) {
      sw.d = to_count(sw_d, "--d");
      sw.d_prime = to_count(sw_dp, "--d-prime");
      result = run_sweep(sw);
    } else if (ramare->parsed()) {
      result = run_ramare(rp);
    } else if (mean->parsed()) {
      mean_cfg.x = to_count(mean_x, "--x");
      mean_cfg.workers = g.workers;
      result = run_mean(mean_cfg);
    } else if (ensemble->parsed()) {
      ens.cls = parse_class(ens_cls);
      ens.seed = ens_seed;
      ens.workers = g.workers;
      ens.cache_dir = cache;
      if (!ens_box.empty()) {
        if (ens.cls == SymmetryClass::Generic) {
          if (ens_box.size() != 6) config_error("generic --box takes six numbers");
          ens.generic_box = {{ens_box[0], ens_box[1]}, {ens_box[2], ens_box[3]}, {ens_box[4], ens_box[5]}};
        } else {
          if (ens_box.size() != 4) config_error("rectangular --box takes four numbers");
          ens.rect_box = {{ens_box[0], ens_box[1]}, {ens_box[2], ens_box[3]}};
        }
      }
      result = run_ensemble(ens);
    } else if (selftest->parsed()) {
      result = run_selftest(st);
    }
  } catch (const Error& e) {
    result = CommandResult{};
    result.exit_code = exit_code_for(e);
    error_text = e.what();
  } catch (const std::exception& e) {
    result = CommandResult{};
    result.exit_code = kExitPartialFailure;
    error_text = e.what();
  }

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  if (!error_text.empty()) std::cerr << "error: " << error_text << "\n";

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  nlohmann::json manifest = {
      {"schema", "1"},
      {"tool", "torusgaps"},
      {"version", kToolVersion},
      {"command", command},
      {"config", {{"global", options_json(&app)}, {"command", options_json(leaf)}}},
      {"summary", result.summary},
      {"warnings", result.warnings},
      {"error", error_text},
      {"exit_code", result.exit_code},
      {"timings", {{"wall_seconds", wall}}},
  };

  try {
    if (error_text.empty()) {
      if (g.out.empty()) {
        std::cout << result.csv;
      } else {
        write_text(g.out, result.csv);
      }
    }
    std::string manifest_path = g.manifest;
    if (manifest_path.empty() && !g.out.empty()) manifest_path = g.out + ".manifest.json";
    if (!manifest_path.empty()) write_text(manifest_path, manifest.dump(2) + "\n");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartialFailure;
  }
  return result.exit_code;
}
