// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rw2cf/calendar.hpp"
#include "rw2cf/csv.hpp"
#include "rw2cf/draws.hpp"
#include "rw2cf/evaluation.hpp"
#include "rw2cf/forecast.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rw2cf;

namespace {

std::string cli_binary() {
  const char* bin = std::getenv("RW2CF_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "RW2CF_CLI_BIN must point at the built binary");
  return bin;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scratch directory per test case, removed on destruction.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("rw2cf_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  RunResult run(const std::string& args) const {
    fs::path out_file = dir / "stdout.txt";
    fs::path err_file = dir / "stderr.txt";
    std::string cmd = "\"" + cli_binary() + "\" " + args + " > \"" + out_file.string() +
                      "\" 2> \"" + err_file.string() + "\"";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
  }

  fs::path write_json(const std::string& name, const json& j) const {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << j.dump(2) << '\n';
    return p;
  }
};

json demo_spec_json() {
  return json{{"T", 48},
              {"start", "2001-01"},
              {"outcome", "y"},
              {"beta0", 1.0},
              {"covariates",
               json::array({json{{"name", "x"},
                                 {"beta", 0.8},
                                 {"mean", 3.0},
                                 {"amplitude", 1.0},
                                 {"phase", 2.0},
                                 {"noise_sd", 0.5}}})},
              {"gamma", 0.3},
              {"v", 0.25},
              {"v_e", 1e-5},
              {"seed", 31}};
}

json demo_run_config(const fs::path& data, const fs::path& out_dir, std::uint64_t seed) {
  return json{{"data", data.string()},
              {"outcome", "y"},
              {"covariates", json::array({"x"})},
              {"train_end", "2004-06"},
              {"horizon_end", "2004-12"},
              {"out_dir", out_dir.string()},
              {"sampler", json{{"chains", 2},
                               {"iterations", 300},
                               {"burn_in", 100},
                               {"thin", 2},
                               {"seed", seed}}}};
}

SyntheticSpec demo_spec_native() {
  SyntheticSpec spec;
  spec.T = 48;
  spec.start = {2001, 1};
  spec.outcome_name = "y";
  spec.beta0 = 1.0;
  spec.beta = {0.8};
  spec.covariates = {{"x", 3.0, 1.0, 2.0, 0.5}};
  spec.gamma = 0.3;
  spec.v = 0.25;
  spec.v_e = 1e-5;
  spec.seed = 31;
  return spec;
}

}  // namespace

TEST_CASE("simulate writes the same dataset the library generator produces") {
  Scratch s;
  fs::path spec_path = s.write_json("spec.json", demo_spec_json());
  fs::path out_dir = s.dir / "sim";

  RunResult r = s.run("simulate --config \"" + spec_path.string() + "\" --out \"" +
                      out_dir.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("synthetic.csv") != std::string::npos);
  CHECK(r.out.find("wrote ") != std::string::npos);
  CHECK_FALSE(fs::exists(out_dir / ".staging"));

  Dataset from_cli = load_csv((out_dir / "synthetic.csv").string());
  Dataset from_lib = generate_synthetic(demo_spec_native());
  REQUIRE(from_cli.column_names() == from_lib.column_names());
  REQUIRE(from_cli.length == from_lib.length);
  REQUIRE(from_cli.start == from_lib.start);
  for (const auto& name : from_lib.column_names()) {
    const auto& got = from_cli.column(name).values;
    const auto& want = from_lib.column(name).values;
    REQUIRE(got.size() == want.size());
    for (std::size_t t = 0; t < want.size(); ++t) REQUIRE(got[t] == want[t]);
  }
}

TEST_CASE("fit, predict, and report emit the documented files") {
  Scratch s;
  fs::path sim_dir = s.dir / "sim";
  fs::path run_dir = s.dir / "run";
  s.run("simulate --config \"" + s.write_json("spec.json", demo_spec_json()).string() +
        "\" --out \"" + sim_dir.string() + "\"");
  fs::path cfg =
      s.write_json("run.json", demo_run_config(sim_dir / "synthetic.csv", run_dir, 7));

  RunResult fit = s.run("fit --config \"" + cfg.string() + "\"");
  REQUIRE_MESSAGE(fit.exit_code == 0, fit.err);
  CHECK(fs::exists(run_dir / "draws.csv"));
  CHECK(fs::exists(run_dir / "coefficients.json"));
  CHECK(fs::exists(run_dir / "diagnostics.json"));
  CHECK_FALSE(fs::exists(run_dir / ".staging"));

  PosteriorDraws draws = read_draws_csv((run_dir / "draws.csv").string());
  CHECK(draws.rows() == 200);
  CHECK(draws.T == 42);
  CHECK(draws.coef_names == std::vector<std::string>{"x"});

  RunResult predict = s.run("predict --config \"" + cfg.string() + "\"");
  REQUIRE_MESSAGE(predict.exit_code == 0, predict.err);
  CounterfactualSummary summary =
      read_counterfactual_csv((run_dir / "counterfactual.csv").string());
  REQUIRE(summary.months.size() == 6);
  CHECK(summary.months.front().month == CalendarMonth{2004, 7});
  CHECK(summary.months.back().month == CalendarMonth{2004, 12});
  for (const auto& m : summary.months) {
    CHECK(std::isfinite(m.observed));
    CHECK(m.pred_lo <= m.pred_median);
    CHECK(m.pred_median <= m.pred_hi);
  }
  CHECK(summary.observed_months == 6);
  CHECK(fs::exists(run_dir / "excess.json"));

  RunResult report = s.run("report --config \"" + cfg.string() + "\"");
  REQUIRE_MESSAGE(report.exit_code == 0, report.err);
  CHECK(fs::exists(run_dir / "ribbon_data.csv"));
  CHECK(fs::exists(run_dir / "plot.svg"));
  std::string md = slurp(run_dir / "report.md");
  CHECK(md.rfind("# Counterfactual comparison: y", 0) == 0);
}

TEST_CASE("identical seeds reproduce outputs byte for byte and --seed changes them") {
  Scratch s;
  fs::path sim_dir = s.dir / "sim";
  s.run("simulate --config \"" + s.write_json("spec.json", demo_spec_json()).string() +
        "\" --out \"" + sim_dir.string() + "\"");
  fs::path data = sim_dir / "synthetic.csv";

  fs::path cfg_a = s.write_json("a.json", demo_run_config(data, s.dir / "a", 7));
  fs::path cfg_b = s.write_json("b.json", demo_run_config(data, s.dir / "b", 7));
  REQUIRE(s.run("fit --config \"" + cfg_a.string() + "\"").exit_code == 0);
  REQUIRE(s.run("fit --config \"" + cfg_b.string() + "\"").exit_code == 0);
  CHECK(slurp(s.dir / "a" / "draws.csv") == slurp(s.dir / "b" / "draws.csv"));
  CHECK(slurp(s.dir / "a" / "coefficients.json") == slurp(s.dir / "b" / "coefficients.json"));
  CHECK(slurp(s.dir / "a" / "diagnostics.json") == slurp(s.dir / "b" / "diagnostics.json"));

  REQUIRE(s.run("fit --config \"" + cfg_a.string() + "\" --seed 99 --out \"" +
                (s.dir / "c").string() + "\"")
              .exit_code == 0);
  CHECK(slurp(s.dir / "a" / "draws.csv") != slurp(s.dir / "c" / "draws.csv"));
}

TEST_CASE("validation and parse failures exit with code 1 and leave no outputs") {
  Scratch s;
  fs::path out_dir = s.dir / "never";

  SUBCASE("horizon not after train_end") {
    json cfg = demo_run_config(s.dir / "missing.csv", out_dir, 1);
    cfg["horizon_end"] = "2004-06";
    RunResult r = s.run("fit --config \"" + s.write_json("bad.json", cfg).string() + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(out_dir));
  }
  SUBCASE("malformed json") {
    fs::path p = s.dir / "broken.json";
    std::ofstream(p) << "{ \"data\": ";
    RunResult r = s.run("fit --config \"" + p.string() + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("config file absent") {
    RunResult r = s.run("fit --config \"" + (s.dir / "nope.json").string() + "\"");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("no subcommand") {
    RunResult r = s.run("");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("unknown flag") {
    RunResult r = s.run("fit --config x.json --bogus 3");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("predict before fit") {
    fs::path sim_dir = s.dir / "sim";
    s.run("simulate --config \"" + s.write_json("spec.json", demo_spec_json()).string() +
          "\" --out \"" + sim_dir.string() + "\"");
    json cfg = demo_run_config(sim_dir / "synthetic.csv", out_dir, 1);
    fs::create_directories(out_dir);
    RunResult r = s.run("predict --config \"" + s.write_json("p.json", cfg).string() + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(out_dir / "counterfactual.csv"));
  }
}
