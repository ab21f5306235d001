// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/prepare.hpp"

#include <unordered_set>

#include "rw2cf/errors.hpp"

namespace rw2cf {

int PreparedModelInput::likelihood_count() const {
  int n = 0;
  for (bool b : likelihood_mask) n += b ? 1 : 0;
  return n;
}

namespace {

// Scaler over the non-missing, non-excluded training entries of one column.
ScalerParams fit_training_scaler(const MonthlySeries& col, const Dataset& dataset, int T,
                                 const std::set<CalendarMonth>& exclude,
                                 const CalendarMonth& train_end) {
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    CalendarMonth m = dataset.start.plus_months(t);
    if (exclude.count(m)) continue;
    double v = col.values[static_cast<std::size_t>(t)];
    if (!is_missing(v)) window.push_back(v);
  }
  if (window.size() < 2) {
    throw ValidationError("column '" + col.name + "' has fewer than 2 training values");
  }
  ScalerParams p;
  try {
    p = fit_scaler(window);
  } catch (const ValidationError&) {
    throw ValidationError("column '" + col.name + "' is constant over the training window");
  }
  p.fit_start = dataset.start;
  p.fit_end = train_end;
  return p;
}

}  // namespace

PreparedModelInput prepare(const Dataset& dataset, const std::string& outcome_name,
                           const ModelConfig& config, const CalendarMonth& train_end,
                           const std::set<CalendarMonth>& exclude_months) {
  config.validate();
  const MonthlySeries& outcome = dataset.column(outcome_name);
  for (const auto& name : config.covariate_names) {
    if (name == outcome_name) {
      throw ValidationError("outcome '" + outcome_name + "' cannot also be a covariate");
    }
    dataset.column(name);
  }
  if (train_end > dataset.end()) {
    throw ValidationError("train_end " + train_end.str() + " is past the data end " +
                          dataset.end().str());
  }
  int T = train_end.months_since(dataset.start) + 1;
  if (T < 13) {
    throw ValidationError("train_end " + train_end.str() +
                          " gives a training span of " + std::to_string(T) +
                          " months; at least 13 are required");
  }

  PreparedModelInput out;
  out.T = T;
  out.start = dataset.start;
  out.has_lag = config.use_lag12;
  out.covariate_names = config.covariate_names;
  out.prior_coef_variance = config.prior_coef_variance;
  out.prior_gamma_shape = config.prior_gamma_shape;
  out.prior_gamma_rate = config.prior_gamma_rate;

  // Outcome on the model scale.
  out.y = Eigen::VectorXd::Constant(T, kMissing);
  if (config.standardize_outcome) {
    out.outcome_scaler = fit_training_scaler(outcome, dataset, T, exclude_months, train_end);
  }
  for (int t = 0; t < T; ++t) {
    double raw = outcome.values[static_cast<std::size_t>(t)];
    if (!is_missing(raw)) {
      out.y[t] = out.outcome_scaler ? out.outcome_scaler->transform(raw) : raw;
    }
  }

  int k = static_cast<int>(config.covariate_names.size());
  out.X = Eigen::MatrixXd::Constant(T, k, kMissing);
  out.covariate_scalers.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const MonthlySeries& col = dataset.column(config.covariate_names[j]);
    ScalerParams p = fit_training_scaler(col, dataset, T, exclude_months, train_end);
    out.covariate_scalers.push_back(p);
    for (int t = 0; t < T; ++t) {
      double raw = col.values[static_cast<std::size_t>(t)];
      if (!is_missing(raw)) out.X(t, j) = p.transform(raw);
    }
  }

  out.lag12 = Eigen::VectorXd::Constant(T, kMissing);
  for (int t = 12; t < T; ++t) out.lag12[t] = out.y[t - 12];

  out.likelihood_mask.assign(static_cast<std::size_t>(T), false);
  for (int t = 13; t <= T; ++t) {
    CalendarMonth m = dataset.start.plus_months(t - 1);
    if (exclude_months.count(m)) continue;
    if (is_missing(out.y[t - 1])) {
      throw ValidationError("outcome missing at " + m.str() + " inside the likelihood window");
    }
    for (int j = 0; j < k; ++j) {
      if (is_missing(out.X(t - 1, j))) {
        throw ValidationError("covariate '" + config.covariate_names[j] + "' missing at " +
                              m.str() + " inside the likelihood window");
      }
    }
    if (config.use_lag12 && is_missing(out.lag12[t - 1])) {
      throw ValidationError("12-month lag unavailable at " + m.str() +
                            " inside the likelihood window");
    }
    out.likelihood_mask[static_cast<std::size_t>(t - 1)] = true;
    if (out.window_first == 0) out.window_first = t;
    out.window_last = t;
  }
  return out;
}

}  // namespace rw2cf
