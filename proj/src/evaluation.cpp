// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rw2cf/draws.hpp"
#include "rw2cf/errors.hpp"
#include "rw2cf/gibbs.hpp"
#include "rw2cf/prepare.hpp"
#include "rw2cf/rng.hpp"

namespace rw2cf {

std::vector<CvFold> make_folds(const Dataset& dataset, const std::vector<int>& years) {
  if (years.empty()) throw ValidationError("no cross-validation years requested");
  std::set<int> seen;
  for (int y : years) {
    if (!seen.insert(y).second) {
      throw ValidationError("year " + std::to_string(y) + " requested twice");
    }
  }
  std::set<CalendarMonth> gaps(dataset.gap_months.begin(), dataset.gap_months.end());
  std::vector<CvFold> folds;
  for (int y : seen) {
    CvFold fold;
    fold.held_out_year = y;
    for (int m = 1; m <= 12; ++m) {
      CalendarMonth cm{y, m};
      if (cm < dataset.start || cm > dataset.end() || gaps.count(cm)) continue;
      fold.test_months.push_back(cm);
    }
    if (fold.test_months.empty()) {
      throw ValidationError("year " + std::to_string(y) + " is absent from the data");
    }
    folds.push_back(std::move(fold));
  }
  return folds;
}

std::vector<int> default_cv_years(const Dataset& dataset, const CalendarMonth& train_end,
                                  bool include_partial) {
  std::set<CalendarMonth> gaps(dataset.gap_months.begin(), dataset.gap_months.end());
  std::vector<int> years;
  for (int y = dataset.start.year; y < train_end.year; ++y) {
    int present = 0;
    for (int m = 1; m <= 12; ++m) {
      CalendarMonth cm{y, m};
      if (cm >= dataset.start && cm <= dataset.end() && !gaps.count(cm)) ++present;
    }
    if (present == 0) continue;
    if (!include_partial && present < 12) continue;
    years.push_back(y);
  }
  return years;
}

std::optional<double> adjusted_r2(const std::vector<double>& observed,
                                  const std::vector<double>& predicted, int p) {
  if (observed.size() != predicted.size()) {
    throw ValidationError("observed/predicted length mismatch");
  }
  auto n = static_cast<int>(observed.size());
  if (n <= p + 1) return std::nullopt;
  double mean = mean_of(observed);
  double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
    ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
  }
  if (!(ss_tot > 0)) return std::nullopt;
  double r2 = 1.0 - ss_res / ss_tot;
  return 1.0 - (1.0 - r2) * (n - 1.0) / (n - p - 1.0);
}

double coverage95(const std::vector<double>& observed,
                  const std::vector<std::pair<double, double>>& intervals) {
  if (observed.size() != intervals.size()) {
    throw ValidationError("observed/interval length mismatch");
  }
  if (observed.empty()) throw ValidationError("coverage of an empty set");
  int inside = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (intervals[i].first <= observed[i] && observed[i] <= intervals[i].second) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(observed.size());
}

CvReport run_cv(const Dataset& dataset, const std::string& outcome_name,
                const ModelConfig& config, const SamplerSettings& settings,
                const std::vector<int>& years) {
  std::vector<CvFold> folds = make_folds(dataset, years);
  int last_year = folds.back().held_out_year;
  for (const auto& f : folds) last_year = std::max(last_year, f.held_out_year);
  CalendarMonth cv_end = std::min(CalendarMonth{last_year, 12}, dataset.end());
  const MonthlySeries& outcome = dataset.column(outcome_name);
  int p = static_cast<int>(config.covariate_names.size()) + (config.use_lag12 ? 1 : 0);

  CvReport report;
  std::vector<double> all_obs, all_pred;
  std::vector<std::pair<double, double>> all_intervals;

  for (const auto& fold : folds) {
    std::set<CalendarMonth> exclude(fold.test_months.begin(), fold.test_months.end());
    PreparedModelInput input = prepare(dataset, outcome_name, config, cv_end, exclude);
    if (input.likelihood_count() < p + 2) {
      throw ValidationError("fold " + std::to_string(fold.held_out_year) +
                            " leaves only " + std::to_string(input.likelihood_count()) +
                            " training months; need at least " + std::to_string(p + 2));
    }
    SamplerSettings fold_settings = settings;
    fold_settings.seed = mix_seed(settings.seed, 88000 + static_cast<std::uint64_t>(
                                                     fold.held_out_year));
    PosteriorDraws draws = run_chains(input, fold_settings);

    // Usable test points: inside the latent window, with observed outcome,
    // covariates, and (when modeled) the 12-month lag.
    Rng rng(mix_seed(fold_settings.seed, 424242));
    FoldResult result;
    result.held_out_year = fold.held_out_year;
    result.test_points = 0;
    std::vector<double> obs, pred;
    std::vector<std::pair<double, double>> intervals;
    int n = draws.rows();
    for (const auto& m : fold.test_months) {
      int t = m.months_since(input.start) + 1;
      if (t < 13 || t > input.T) continue;
      double y_raw = outcome.at(m);
      if (is_missing(y_raw)) continue;
      bool usable = true;
      for (int j = 0; j < static_cast<int>(input.covariate_names.size()); ++j) {
        if (is_missing(input.X(t - 1, j))) usable = false;
      }
      if (input.has_lag && is_missing(input.lag12[t - 1])) usable = false;
      if (!usable) continue;

      std::vector<double> y_star(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        auto r = static_cast<std::size_t>(i);
        double lambda = draws.beta0[r] + draws.u(i, t - 1);
        for (int j = 0; j < draws.k(); ++j) lambda += input.X(t - 1, j) * draws.beta(i, j);
        if (input.has_lag) lambda += draws.gamma[r] * input.lag12[t - 1];
        double v = 1.0 / draws.tau[r];
        y_star[r] = input.to_raw(lambda + std::sqrt(v) * rng.normal());
      }
      obs.push_back(y_raw);
      pred.push_back(quantile(y_star, 0.5));
      intervals.emplace_back(quantile(y_star, 0.025), quantile(y_star, 0.975));
      ++result.test_points;
    }

    if (result.test_points > 0) {
      result.adj_r2 = adjusted_r2(obs, pred, p);
      result.coverage = coverage95(obs, intervals);
      all_obs.insert(all_obs.end(), obs.begin(), obs.end());
      all_pred.insert(all_pred.end(), pred.begin(), pred.end());
      all_intervals.insert(all_intervals.end(), intervals.begin(), intervals.end());
    }
    report.folds.push_back(result);
  }

  report.pooled_points = static_cast<int>(all_obs.size());
  if (!all_obs.empty()) {
    report.pooled_adj_r2 = adjusted_r2(all_obs, all_pred, p);
    report.pooled_coverage = coverage95(all_obs, all_intervals);
  }
  return report;
}

void SyntheticSpec::validate() const {
  if (T < 30) throw ValidationError("synthetic T must be >= 30");
  if (beta.size() != covariates.size()) {
    throw ValidationError("synthetic beta/covariate count mismatch");
  }
  if (!(v >= 0)) throw ValidationError("synthetic v must be >= 0");
  if (!(v_e >= 0)) throw ValidationError("synthetic v_e must be >= 0");
  if (outcome_name.empty()) throw ValidationError("synthetic outcome name is empty");
  std::set<std::string> names{outcome_name};
  for (const auto& c : covariates) {
    if (!names.insert(c.name).second) {
      throw ValidationError("duplicate synthetic column '" + c.name + "'");
    }
  }
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  int T = spec.T;
  int k = static_cast<int>(spec.covariates.size());
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  Eigen::MatrixXd X(T, k);
  for (int j = 0; j < k; ++j) {
    const CovariateSpec& cs = spec.covariates[static_cast<std::size_t>(j)];
    for (int t = 1; t <= T; ++t) {
      X(t - 1, j) = cs.mean + cs.amplitude * std::sin(kTwoPi * (t - cs.phase) / 12.0) +
                    cs.noise_sd * rng.normal();
    }
  }

  Eigen::VectorXd u = Eigen::VectorXd::Zero(T);
  double trend_sd = std::sqrt(spec.v_e);
  for (int t = 3; t <= T; ++t) {
    u[t - 1] = 2.0 * u[t - 2] - u[t - 3] + trend_sd * rng.normal();
  }

  Eigen::VectorXd y(T);
  double noise_sd = std::sqrt(spec.v);
  for (int t = 1; t <= T; ++t) {
    double mean = spec.beta0 + u[t - 1];
    for (int j = 0; j < k; ++j) mean += X(t - 1, j) * spec.beta[static_cast<std::size_t>(j)];
    if (t > 12) mean += spec.gamma * y[t - 13];
    y[t - 1] = mean + noise_sd * rng.normal();
  }

  Dataset ds;
  ds.label = "synthetic";
  ds.start = spec.start;
  ds.length = T;
  MonthlySeries out;
  out.name = spec.outcome_name;
  out.start = spec.start;
  out.values.assign(y.data(), y.data() + T);
  ds.columns.push_back(std::move(out));
  for (int j = 0; j < k; ++j) {
    MonthlySeries col;
    col.name = spec.covariates[static_cast<std::size_t>(j)].name;
    col.start = spec.start;
    col.values.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) col.values[static_cast<std::size_t>(t)] = X(t, j);
    ds.columns.push_back(std::move(col));
  }
  return ds;
}

}  // namespace rw2cf
