#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "specrings/cli.hpp"
#include "specrings/config.hpp"

using namespace specrings;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "specrings");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("specrings_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("round trip") {
    ExperimentConfig c;
    c.blocks = {{cplx{0.5, -1}, 3}, {0.0, 4}};
    c.gamma = 0.8;
    c.seed = 18446744073709551557ULL;
    c.noise_kind = NoiseKind::complex;
    c.eps_prime = 0.05;
    c.grid = GridSpec{-1, 1, -2, 2, 3, 4};
    c.threads = 2;
    const std::string text = config_to_text(c);
    const ExperimentConfig d = parse_config_text(text);
    CHECK(config_to_text(d) == text);
    CHECK(*d.seed == 18446744073709551557ULL);
    const ModelSpec s = resolve_model(d, 1.0, 1);
    CHECK(s.n() == 7);
    CHECK(s.noise_kind == NoiseKind::complex);
    CHECK(model_spec_from_text(model_spec_to_text(s)) == s);
  }

  TEST_CASE("presets and defaults") {
    const ExperimentConfig c = parse_config_text(R"({"preset": "figure2", "n": 10})");
    const ModelSpec s = resolve_model(c, 0.75, 42);
    CHECK(s.n() == 10);
    CHECK(s.gamma == 0.75);
    CHECK(s.seed == 42);
    CHECK(s.noise_kind == NoiseKind::real);
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[1]"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"gama": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"preset": "figure3", "n": 10})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"blocks": [{"center_re": 1}]})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"noise_kind": "pink"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"grid": "1,2"})"), ConfigError);
    const ExperimentConfig both =
        parse_config_text(R"({"preset": "figure2", "n": 10, "blocks": [{"dim": 3}]})");
    CHECK_THROWS_AS(resolve_model(both, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(resolve_model(ExperimentConfig{}, 1.0, 1), ConfigError);
    const ExperimentConfig bad_n = parse_config_text(R"({"n": 5, "blocks": [{"dim": 3}]})");
    CHECK_THROWS_AS(resolve_model(bad_n, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/specrings.json"), ConfigError);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("figure2 writes its outputs and a manifest") {
    const fs::path dir = scratch("fig2");
    const Outcome o = run({"figure2", "--n", "120", "--gamma", "0.75", "--seed", "7", "--out", dir.string()});
    REQUIRE(o.code == 0);
    CHECK(first_line(dir / "eigenvalues.csv") == "re,im");
    CHECK(line_count(dir / "eigenvalues.csv") == 121);
    CHECK(first_line(dir / "radial_cdf.csv") == "r,f_emp,f_pred");
    const json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["seed"] == 7);
    CHECK(m["model"]["n"] == 120);
    CHECK(m["model"]["gamma"] == 0.75);
    CHECK(m["model"]["nu"] == 0.25);
    CHECK(m["model"].contains("ell"));
    CHECK(m["timings_s"].contains("build"));
    CHECK(m["timings_s"].contains("eigs"));
    CHECK(m["exit_code"] == 0);
    const json r = json::parse(slurp(dir / "report.json"));
    CHECK(r.contains("modulus_kolmogorov"));
  }

  TEST_CASE("re-running from a manifest reproduces the eigenvalues") {
    const fs::path a = scratch("repro_a"), b = scratch("repro_b");
    REQUIRE(run({"figure1", "--n", "150", "--gamma", "0.9", "--seed", "11", "--out", a.string()}).code == 0);
    REQUIRE(run({"figure1", "--config", (a / "manifest.json").string(), "--out", b.string()}).code == 0);
    CHECK(slurp(a / "eigenvalues.csv") == slurp(b / "eigenvalues.csv"));
    CHECK(slurp(a / "overlay.csv") == slurp(b / "overlay.csv"));
    CHECK(line_count(a / "eigenvalues.csv") == 151);
    CHECK_FALSE(fs::exists(a / "radial_cdf.csv"));
  }

  TEST_CASE("spectrum from explicit blocks") {
    const fs::path dir = scratch("spectrum");
    fs::create_directories(dir);
    {
      std::ofstream cfg(dir / "cfg.json");
      cfg << R"({"blocks": [{"center_re": 0.5, "dim": 20}, {"center_re": -0.5, "dim": 10}], "gamma": 1.2, "seed": 3})";
    }
    const Outcome o = run({"spectrum", "--config", (dir / "cfg.json").string(), "--out", (dir / "o").string()});
    CHECK(o.code == 0);
    CHECK(line_count(dir / "o" / "eigenvalues.csv") == 31);
  }

  TEST_CASE("potential grid") {
    const fs::path dir = scratch("grid");
    const Outcome o = run({"potential-grid", "--preset", "figure2", "--n", "100", "--grid", "-1,1,-1,1,4,5",
                           "--exclude-band", "0.05", "--threads", "2", "--out", dir.string()});
    REQUIRE(o.code == 0);
    CHECK(first_line(dir / "grid.csv") == "z_re,z_im,u_emp,u_pred,in_v");
    CHECK(line_count(dir / "grid.csv") == 21);
    const json r = json::parse(slurp(dir / "report.json"));
    CHECK(r["n_grid"] == 20);
    CHECK(r["route"] == "lu");
    const json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["timings_s"].contains("grid"));
  }

  TEST_CASE("gauss moments") {
    const fs::path dir = scratch("gauss");
    const Outcome o = run({"gauss-moments", "--k", "3", "--samples", "20000", "--out", dir.string()});
    CHECK(o.code == 0);
    CHECK(first_line(dir / "gauss_moments.csv") == "check,k,estimate,std_error,target,pass");
    CHECK(line_count(dir / "gauss_moments.csv") == 5);
  }

  TEST_CASE("verify-lemmas reports every check") {
    const fs::path dir = scratch("verify");
    const Outcome o = run({"verify-lemmas", "--samples", "4000", "--out", dir.string()});
    CHECK(o.code == 0);
    const json r = json::parse(slurp(dir / "verify_report.json"));
    CHECK(r["all_pass"] == true);
    CHECK(r["checks"].size() >= 20);
    for (const auto& c : r["checks"]) CHECK_MESSAGE(c["pass"] == true, c["name"]);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"figure2", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"figure2", "--n", "abc"}).code == 2);
    CHECK(run({"figure2", "--config", "/nonexistent/cfg.json", "--out", scratch("nocfg").string()}).code == 2);
    CHECK(run({"figure2", "--gamma", "0.4", "--n", "50", "--out", scratch("badgamma").string()}).code == 2);
    CHECK(run({"spectrum", "--out", scratch("nomodel").string()}).code == 2);
    CHECK(run({"potential-grid", "--preset", "figure2", "--n", "50", "--eps-prime", "0.9", "--out",
               scratch("badeps").string()})
              .code == 2);
    CHECK(run({"gauss-moments", "--k", "13", "--out", scratch("badk").string()}).code == 2);
    // A regular file where the output directory should go.
    const fs::path blocker = scratch("blocker");
    { std::ofstream(blocker) << "x"; }
    CHECK(run({"figure2", "--n", "50", "--out", (blocker / "sub").string()}).code == 1);
  }

  TEST_CASE("help documents the flags") {
    for (const char* cmd : {"spectrum", "figure1", "figure2", "potential-grid", "verify-lemmas", "gauss-moments"}) {
      const Outcome o = run({cmd, "--help"});
      CHECK(o.code == 0);
      for (const char* flag : {"--config", "--n", "--gamma", "--seed", "--out", "--eps-prime", "--grid", "--threads"})
        CHECK_MESSAGE(o.out.find(flag) != std::string::npos, cmd << " " << flag);
    }
    CHECK(run({"potential-grid", "--help"}).out.find("--exclude-band") != std::string::npos);
    CHECK(run({"gauss-moments", "--help"}).out.find("--k") != std::string::npos);
  }
}
