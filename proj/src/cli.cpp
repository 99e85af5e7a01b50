#include "specrings/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "specrings/config.hpp"
#include "specrings/denselinalg.hpp"
#include "specrings/empirics.hpp"
#include "specrings/gausslab.hpp"
#include "specrings/limitlaw.hpp"
#include "specrings/model.hpp"
#include "specrings/parallel.hpp"
#include "specrings/rng.hpp"
#include "specrings/stats.hpp"
#include "specrings/verify.hpp"

#ifndef SPECRINGS_VERSION
#define SPECRINGS_VERSION "dev"
#endif

namespace specrings {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kManifestSchema = 1;
constexpr double kCoverageTol = 0.12;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::uint64_t kOverlayStream = 0x6f7665726c6179ULL;

// Thrown when an embedded check of a run fails (exit 1).
class RunFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::optional<int> n;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
  std::string out = "specrings_out";
  std::optional<double> eps_prime;
  std::string grid;
  int threads = 0;
  std::string preset;
  double exclude_band = 0.0;
  int samples = 0;
  int k = 4;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (or a run manifest)");
  sub->add_option("--n", f.n, "Matrix size N (preset models)")->check(CLI::PositiveNumber);
  sub->add_option("--gamma", f.gamma, "Noise exponent gamma > 1/2");
  sub->add_option("--seed", f.seed, "64-bit master seed");
  sub->add_option("--out", f.out, "Output directory")->capture_default_str();
  sub->add_option("--eps-prime", f.eps_prime, "eps' in (0, 2 gamma - 1) for the V_N region");
  sub->add_option("--grid", f.grid, "Evaluation grid re0,re1,im0,im1,nx,ny");
  sub->add_option("--threads", f.threads,
                  "Worker threads (falls back to SPECRINGS_THREADS, then hardware concurrency)");
}

// Per-phase wall clock in seconds.
class PhaseTimes {
 public:
  template <typename Fn>
  auto time(const std::string& phase, Fn&& fn) {
    const auto start = Clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(phase, start);
    } else {
      auto result = fn();
      record(phase, start);
      return result;
    }
  }
  const json& as_json() const { return times_; }

 private:
  void record(const std::string& phase, Clock::time_point start) {
    times_[phase] = std::chrono::duration<double>(Clock::now() - start).count();
  }
  json times_ = json::object();
};

class Run {
 public:
  Run(std::string command, fs::path out_dir, std::ostream& out)
      : command_(std::move(command)), out_dir_(std::move(out_dir)), out_(out), start_(Clock::now()) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec || !fs::is_directory(out_dir_)) {
      throw std::runtime_error("cannot create output directory '" + out_dir_.string() + "'");
    }
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = out_dir_ / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    body(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
    outputs_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) {
    write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }

  PhaseTimes& timer() { return times_; }
  std::ostream& out() { return out_; }
  void set_config(const ExperimentConfig& c) { config_ = json::parse(config_to_text(c)); }
  void set_model(const ModelSpec& spec) {
    model_ = json{{"n", spec.n()},       {"ell", spec.ell()},
                  {"gamma", spec.gamma}, {"nu", spec.nu()},
                  {"seed", spec.seed},   {"noise_kind", to_string(spec.noise_kind)}};
  }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void emit_manifest(int exit_code, const std::string& message) {
    json m;
    m["schema_version"] = kManifestSchema;
    m["program"] = "specrings";
    m["version"] = SPECRINGS_VERSION;
    m["compiler"] = __VERSION__;
    m["command"] = command_;
    m["config"] = config_;
    if (seed_) m["seed"] = *seed_;
    if (!model_.is_null()) m["model"] = model_;
    m["outputs"] = outputs_;
    m["schemas"] = {{"eigenvalues.csv", "re,im"},
                    {"overlay.csv", "re,im"},
                    {"grid.csv", "z_re,z_im,u_emp,u_pred,in_v"},
                    {"radial_cdf.csv", "r,f_emp,f_pred"},
                    {"gauss_moments.csv", "check,k,estimate,std_error,target,pass"},
                    {"report.json", "v1"},
                    {"verify_report.json", "v1"}};
    m["timings_s"] = times_.as_json();
    m["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start_).count();
    m["exit_code"] = exit_code;
    m["status"] = exit_code == kExitOk ? "ok" : "failed";
    if (!message.empty()) m["message"] = message;
    const fs::path path = out_dir_ / "manifest.json";
    std::ofstream os(path);
    os << m.dump(2) << '\n';
    if (!os) throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  }

 private:
  std::string command_;
  fs::path out_dir_;
  std::ostream& out_;
  Clock::time_point start_;
  PhaseTimes times_;
  json config_ = json::object();
  json model_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
};

ExperimentConfig merge_flags(const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (f.n) c.n = *f.n;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.seed) c.seed = *f.seed;
  if (f.eps_prime) c.eps_prime = *f.eps_prime;
  if (!f.grid.empty()) {
    try {
      c.grid = GridSpec::parse(f.grid);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (f.threads > 0) c.threads = f.threads;
  if (!f.preset.empty()) {
    if (f.preset != "figure1" && f.preset != "figure2") {
      throw ConfigError("--preset must be figure1 or figure2");
    }
    c.preset = f.preset;
  }
  return c;
}

ModelSpec model_for(ExperimentConfig& c, const std::string& forced_preset, int default_n, double default_gamma) {
  if (!forced_preset.empty()) {
    if (!c.blocks.empty()) throw ConfigError("this command uses a preset; explicit blocks are not allowed");
    if (c.preset && *c.preset != forced_preset) {
      throw ConfigError("config preset '" + *c.preset + "' conflicts with command " + forced_preset);
    }
    c.preset = forced_preset;
    if (!c.n) c.n = default_n;
  }
  if (!c.preset && c.blocks.empty()) {
    throw ConfigError("no model given: use --config with blocks or a preset, or --preset with --n");
  }
  if (c.preset && !c.n) c.n = default_n;
  if (!c.gamma) c.gamma = default_gamma;
  if (!c.seed) c.seed = kDefaultSeed;
  return resolve_model(c, default_gamma, kDefaultSeed);
}

json spectrum_report(const ModelSpec& spec, const Spectrum& s, const LimitMeasure& measure) {
  json r;
  r["n"] = spec.n();
  r["ell"] = spec.ell();
  r["gamma"] = spec.gamma;
  r["nu"] = spec.nu();
  r["iterations"] = s.iterations;
  r["converged"] = s.converged;
  r["annulus_tol"] = kCoverageTol;
  r["annulus_coverage"] = annulus_coverage(s, measure, kCoverageTol);
  r["mean_center_distance"] = mean_center_distance(s, measure);
  r["max_radius"] = measure.max_radius();
  const cplx c0 = measure.components.front().center;
  if (measure.is_concentric(c0)) {
    double max_mod = 0.0;
    for (const auto& l : s.eigenvalues) max_mod = std::max(max_mod, std::abs(l - c0));
    r["center_re"] = c0.real();
    r["center_im"] = c0.imag();
    r["max_modulus"] = max_mod;
    r["modulus_kolmogorov"] = modulus_kolmogorov(s, c0, measure);
  }
  return r;
}

int spectrum_command(Run& run, ExperimentConfig cfg, const std::string& preset, int default_n,
                     double default_gamma) {
  const ModelSpec spec = model_for(cfg, preset, default_n, default_gamma);
  run.set_config(cfg);
  run.set_model(spec);
  run.set_seed(spec.seed);
  const ComplexMatrix m = run.timer().time("build", [&] { return perturbed_matrix(spec); });
  const Spectrum s = run.timer().time("eigs", [&] { return eigenvalues(m); });
  if (!s.converged) {
    throw RunFailure("eigensolver did not converge after " + std::to_string(s.iterations) +
                     " sweeps (" + std::to_string(s.eigenvalues.size()) + " of " +
                     std::to_string(spec.n()) + " eigenvalues found)");
  }
  const LimitMeasure measure = limit_measure(spec);
  run.write("eigenvalues.csv", [&](std::ostream& os) { write_eigenvalues_csv(os, s.eigenvalues); });
  run.write("overlay.csv", [&](std::ostream& os) {
    write_eigenvalues_csv(os, sample_limit(measure, spec.n(), splitmix64(spec.seed ^ kOverlayStream)));
  });
  const cplx c0 = measure.components.front().center;
  if (measure.is_concentric(c0)) {
    run.write("radial_cdf.csv", [&](std::ostream& os) { write_radial_cdf_csv(os, s, c0, measure); });
  }
  const json report = spectrum_report(spec, s, measure);
  run.write_json("report.json", report);
  run.out() << report.dump() << '\n';
  return kExitOk;
}

int potential_grid_command(Run& run, ExperimentConfig cfg, double exclude_band) {
  const ModelSpec spec = model_for(cfg, "", 1000, 0.75);
  if (!cfg.grid) cfg.grid = GridSpec{-1.5, 1.5, -1.5, 1.5, 20, 20};
  if (!cfg.eps_prime) cfg.eps_prime = default_eps_prime(spec.gamma);
  if (!(*cfg.eps_prime > 0.0 && *cfg.eps_prime < 2.0 * spec.gamma - 1.0)) {
    throw ConfigError("eps_prime must lie in (0, 2 gamma - 1)");
  }
  run.set_config(cfg);
  run.set_model(spec);
  run.set_seed(spec.seed);
  GridOptions opts;
  opts.exclude_band = exclude_band;
  opts.threads = resolve_threads(cfg.threads.value_or(0));
  const ComplexMatrix m = run.timer().time("build", [&] { return perturbed_matrix(spec); });
  std::optional<Spectrum> s;
  if (cfg.grid->size() > 100) {
    s = run.timer().time("eigs", [&] { return eigenvalues(m); });
    if (!s->converged) throw RunFailure("eigensolver did not converge");
  }
  const GridComparison cmp = run.timer().time("grid", [&] {
    return potential_grid_compare(spec, m, s ? &*s : nullptr, *cfg.grid, *cfg.eps_prime, opts);
  });
  run.write("grid.csv", [&](std::ostream& os) { write_grid_csv(os, cmp.rows); });
  const ComparisonReport& rep = cmp.report;
  json r;
  r["potential_l1"] = rep.potential_l1;
  r["n_grid"] = cmp.rows.size();
  r["n_grid_in_V"] = rep.n_grid_in_V;
  r["n_aggregated"] = rep.n_aggregated;
  r["n_singular"] = rep.n_singular;
  r["n_banded"] = rep.n_banded;
  r["empty_aggregation"] = rep.empty_aggregation;
  r["route"] = to_string(rep.route_used);
  r["eps_prime"] = *cfg.eps_prime;
  r["exclude_band"] = exclude_band;
  if (rep.has_spectrum) r["annulus_coverage"] = rep.annulus_coverage;
  if (rep.has_kolmogorov) r["modulus_kolmogorov"] = rep.kolmogorov;
  run.write_json("report.json", r);
  run.out() << r.dump() << '\n';
  return kExitOk;
}

int verify_command(Run& run, const ExperimentConfig& cfg, int samples) {
  VerifyOptions opts;
  if (samples > 0) opts.samples = samples;
  if (cfg.seed) opts.seed = *cfg.seed;
  opts.threads = resolve_threads(cfg.threads.value_or(0));
  run.set_config(cfg);
  run.set_seed(opts.seed);
  const auto results = run.timer().time("verify", [&] { return verify_lemmas(opts); });
  json checks = json::array();
  bool all = true;
  for (const auto& c : results) {
    all = all && c.pass;
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    run.out() << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
  }
  run.write_json("verify_report.json", json{{"checks", checks}, {"all_pass", all}, {"samples", opts.samples}});
  return all ? kExitOk : kExitAssertion;
}

int gauss_moments_command(Run& run, const ExperimentConfig& cfg, int k, int samples) {
  if (k < 1 || k > 12) throw ConfigError("--k must be in [1, 12]");
  if (samples < 2) throw ConfigError("--samples must be >= 2");
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  const unsigned threads = resolve_threads(cfg.threads.value_or(0));
  run.set_config(cfg);
  run.set_seed(seed);

  struct Row {
    std::string check;
    double estimate, std_error, target;
    bool pass;
  };
  std::vector<Row> rows;
  const double kfact = std::tgamma(k + 1.0);
  auto det = run.timer().time("sample", [&] { return gauss_det_samples(k, samples, seed, threads); });
  auto chi = run.timer().time("sample_goodman", [&] {
    return goodman_samples(k, samples, splitmix64(seed + 1), threads);
  });
  auto mean_row = [&](const std::string& name, std::vector<double> xs, double target) {
    const SampleMoments m = sample_moments(xs);
    rows.push_back({name, m.mean, m.std_error, target, std::abs(m.mean - target) <= 5.0 * m.std_error});
  };
  std::vector<double> det_sq(det.size());
  std::vector<double> chi_sq(chi.size());
  std::vector<double> chi_fourth(chi.size());
  for (std::size_t i = 0; i < det.size(); ++i) det_sq[i] = det[i] * det[i];
  for (std::size_t i = 0; i < chi.size(); ++i) {
    chi_sq[i] = chi[i] * chi[i];
    chi_fourth[i] = chi_sq[i] * chi_sq[i];
  }
  double fourth_target = 1.0;
  for (int r = 1; r <= k; ++r) fourth_target *= chi_moment(r, 2.0);
  mean_row("det_sq_mean", det_sq, kfact);
  mean_row("goodman_sq_mean", chi_sq, kfact);
  mean_row("goodman_sq_second_moment", chi_fourth, fourth_target);
  const KsResult ks = ks_two_sample(det, chi);
  rows.push_back({"ks_det_vs_goodman_pvalue", ks.p_value, 0.0, 1e-3, ks.p_value > 1e-3});

  std::ostringstream csv;
  csv << "check,k,estimate,std_error,target,pass\n" << std::setprecision(10);
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.pass;
    csv << r.check << ',' << k << ',' << r.estimate << ',' << r.std_error << ',' << r.target << ','
        << (r.pass ? "true" : "false") << '\n';
  }
  run.write("gauss_moments.csv", [&](std::ostream& os) { os << csv.str(); });
  run.out() << csv.str();
  return all ? kExitOk : kExitAssertion;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"specrings: spectra of Jordan-block matrices under vanishing Gaussian noise"};
  app.require_subcommand(1, 1);
  Flags f;

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a configured ensemble");
  add_common(spectrum, f);
  spectrum->add_option("--preset", f.preset, "figure1 | figure2 (instead of explicit blocks)");

  auto* fig1 = app.add_subcommand("figure1", "Five-center ring ensemble (default N=2000, gamma=1)");
  add_common(fig1, f);
  auto* fig2 = app.add_subcommand("figure2", "Concentric ensemble, block sizes 1..ceil(ln N) (default N=1000, gamma=3/4)");
  add_common(fig2, f);

  auto* grid = app.add_subcommand("potential-grid", "Empirical vs limiting log potential on a grid");
  add_common(grid, f);
  grid->add_option("--preset", f.preset, "figure1 | figure2 (instead of explicit blocks)");
  grid->add_option("--exclude-band", f.exclude_band,
                   "Leave points within this distance of a predicted circle out of the mean")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify-lemmas", "Determinant identities and Gaussian determinant laws");
  add_common(verify, f);
  verify->add_option("--samples", f.samples, "Monte Carlo draws per check (default 10000)")
      ->check(CLI::PositiveNumber);

  auto* gauss = app.add_subcommand("gauss-moments", "Moments of |det E| against the chi-product law");
  add_common(gauss, f);
  gauss->add_option("--k", f.k, "Matrix size k (1..12)")->capture_default_str();
  gauss->add_option("--samples", f.samples, "Monte Carlo draws (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command = app.get_subcommands().front()->get_name();
  std::optional<Run> run;
  try {
    ExperimentConfig cfg = merge_flags(f);
    run.emplace(command, fs::path(f.out), out);
    int code = kExitOk;
    if (command == "spectrum") {
      code = spectrum_command(*run, cfg, "", 1000, 1.0);
    } else if (command == "figure1") {
      code = spectrum_command(*run, cfg, "figure1", 2000, 1.0);
    } else if (command == "figure2") {
      code = spectrum_command(*run, cfg, "figure2", 1000, 0.75);
    } else if (command == "potential-grid") {
      code = potential_grid_command(*run, cfg, f.exclude_band);
    } else if (command == "verify-lemmas") {
      code = verify_command(*run, cfg, f.samples);
    } else {
      code = gauss_moments_command(*run, cfg, f.k, f.samples > 0 ? f.samples : 100000);
    }
    run->emit_manifest(code, code == kExitOk ? "" : "one or more checks failed");
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    if (run) run->emit_manifest(kExitConfig, e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    if (run) run->emit_manifest(kExitConfig, e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    try {
      if (run) run->emit_manifest(kExitAssertion, e.what());
    } catch (const std::exception&) {
    }
    return kExitAssertion;
  }
}

}  // namespace specrings
