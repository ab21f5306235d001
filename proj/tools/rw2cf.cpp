// Apache License, Version 2.0, refer to LICENSE.txt

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rw2cf/config.hpp"
#include "rw2cf/csv.hpp"
#include "rw2cf/diagnostics.hpp"
#include "rw2cf/errors.hpp"
#include "rw2cf/evaluation.hpp"
#include "rw2cf/forecast.hpp"
#include "rw2cf/gibbs.hpp"
#include "rw2cf/prepare.hpp"
#include "rw2cf/report.hpp"

namespace fs = std::filesystem;
using namespace rw2cf;

namespace {

// Outputs are written to a staging directory and renamed into place only
// after every file of the command succeeded, so failures leave no partials.
class OutputStager {
 public:
  explicit OutputStager(const std::string& out_dir) : dir_(out_dir) {
    fs::create_directories(dir_);
    stage_ = dir_ / ".staging";
    fs::remove_all(stage_);
    fs::create_directories(stage_);
  }

  ~OutputStager() {
    std::error_code ec;
    fs::remove_all(stage_, ec);
  }

  std::string path_for(const std::string& filename) {
    planned_.push_back(filename);
    return (stage_ / filename).string();
  }

  void commit() {
    for (const auto& name : planned_) {
      fs::rename(stage_ / name, dir_ / name);
      std::cout << "wrote " << (dir_ / name).string() << '\n';
    }
    planned_.clear();
  }

 private:
  fs::path dir_;
  fs::path stage_;
  std::vector<std::string> planned_;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
  if (!out) throw ParseError("write failed for " + path);
}

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  std::optional<std::uint64_t> seed_override;
};

RunConfig load_run_config(const CommonArgs& args) {
  RunConfig config = run_config_from_json(args.config_path);
  if (!args.out_override.empty()) config.out_dir = args.out_override;
  if (args.seed_override) config.sampler.seed = *args.seed_override;
  return config;
}

int cmd_fit(const CommonArgs& args) {
  RunConfig config = load_run_config(args);
  Dataset dataset = load_csv(config.data_path);
  PreparedModelInput input = prepare(dataset, config.outcome, config.model, config.train_end);
  std::cerr << "fitting " << config.outcome << ": T=" << input.T << ", "
            << input.likelihood_count() << " likelihood months, " << config.sampler.chains
            << " chains x " << config.sampler.iterations << " sweeps\n";
  PosteriorDraws draws = run_chains(input, config.sampler, [&](int chain) {
    std::cerr << "chain " << chain << "/" << config.sampler.chains << " done\n";
  });

  OutputStager stager(config.out_dir);
  write_draws_csv(draws, stager.path_for("draws.csv"));
  write_coefficients_json(summarize_coefficients(draws), stager.path_for("coefficients.json"));
  write_diagnostics_json(compute_diagnostics(draws), stager.path_for("diagnostics.json"));
  stager.commit();
  return 0;
}

int cmd_predict(const CommonArgs& args) {
  RunConfig config = load_run_config(args);
  Dataset dataset = load_csv(config.data_path);
  PreparedModelInput input = prepare(dataset, config.outcome, config.model, config.train_end);
  PosteriorDraws draws = read_draws_csv((fs::path(config.out_dir) / "draws.csv").string());

  CalendarMonth horizon_start = config.train_end.plus_months(1);
  ForecastInput forecast =
      build_forecast_input(dataset, config.outcome, input, horizon_start, config.horizon_end);
  Eigen::MatrixXd pred =
      predict_counterfactual(draws, forecast, input, config.sampler.seed);
  CounterfactualSummary summary = summarize_prediction(pred, forecast);

  OutputStager stager(config.out_dir);
  write_counterfactual_csv(summary, stager.path_for("counterfactual.csv"));
  write_excess_json(summary, stager.path_for("excess.json"));
  stager.commit();
  return 0;
}

int cmd_cv(const CommonArgs& args) {
  RunConfig config = load_run_config(args);
  Dataset dataset = load_csv(config.data_path);
  std::vector<int> years = config.cv_years;
  if (years.empty()) {
    years = default_cv_years(dataset, config.train_end, config.cv_include_partial_years);
  }
  if (years.size() < 2) {
    throw ValidationError("cross-validation needs at least 2 candidate years");
  }
  CvReport report = run_cv(dataset, config.outcome, config.model, config.sampler, years);

  OutputStager stager(config.out_dir);
  write_cv_report_json(report, stager.path_for("cv_report.json"));
  stager.commit();
  return 0;
}

int cmd_simulate(const CommonArgs& args) {
  SyntheticSpec spec = synthetic_spec_from_json(args.config_path);
  if (args.seed_override) spec.seed = *args.seed_override;
  Dataset dataset = generate_synthetic(spec);

  OutputStager stager(args.out_override.empty() ? "out" : args.out_override);
  write_csv(dataset, stager.path_for("synthetic.csv"));
  stager.commit();
  return 0;
}

int cmd_report(const CommonArgs& args) {
  RunConfig config = load_run_config(args);
  CounterfactualSummary summary =
      read_counterfactual_csv((fs::path(config.out_dir) / "counterfactual.csv").string());

  OutputStager stager(config.out_dir);
  write_ribbon_csv(summary, stager.path_for("ribbon_data.csv"));
  write_text_file(stager.path_for("report.md"),
                  render_report_markdown(summary, config.outcome));
  write_text_file(stager.path_for("plot.svg"), render_ribbon_svg(summary, config.outcome));
  stager.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual trend regression for monthly time series"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, bool config_is_spec = false) {
    sub->add_option("--config", args.config_path,
                    config_is_spec ? "Synthetic-data spec (JSON)" : "Run configuration (JSON)")
        ->required();
    sub->add_option("--out", args.out_override, "Output directory (overrides config)");
    sub->add_option("--seed", args.seed_override, "RNG seed (overrides config)");
  };

  CLI::App* fit = app.add_subcommand("fit", "Fit the model and write posterior draws");
  add_common(fit);
  CLI::App* predict =
      app.add_subcommand("predict", "Counterfactual forecast from fitted draws");
  add_common(predict);
  CLI::App* cv = app.add_subcommand("cv", "Leave-one-year-out cross-validation");
  add_common(cv);
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  add_common(simulate, true);
  CLI::App* report = app.add_subcommand("report", "Ribbon data, markdown report, and chart");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed()) return cmd_fit(args);
    if (predict->parsed()) return cmd_predict(args);
    if (cv->parsed()) return cmd_cv(args);
    if (simulate->parsed()) return cmd_simulate(args);
    if (report->parsed()) return cmd_report(args);
    std::cerr << "no command given\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
}
