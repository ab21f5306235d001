// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_PREPARE_HPP
#define RW2CF_PREPARE_HPP

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rw2cf/model.hpp"
#include "rw2cf/scaler.hpp"
#include "rw2cf/series.hpp"

namespace rw2cf {

/// Model-ready arrays. Index convention: t = 1..T maps to row t-1; month t
/// is start.plus_months(t-1). The latent trend spans all T training months;
/// likelihood contributions are restricted to `likelihood_mask`.
struct PreparedModelInput {
  Eigen::VectorXd y;       // outcome on the model scale (NaN where missing)
  Eigen::MatrixXd X;       // T x k standardized covariates
  Eigen::VectorXd lag12;   // y shifted 12 months, same scale as y (NaN first 12)
  std::vector<bool> likelihood_mask;  // length T
  int window_first = 0;    // first masked index (1-based), 0 when empty
  int window_last = 0;     // last masked index (1-based)
  int T = 0;
  bool has_lag = true;
  CalendarMonth start;     // month of index 1
  std::vector<std::string> covariate_names;
  std::optional<ScalerParams> outcome_scaler;
  std::vector<ScalerParams> covariate_scalers;
  // Prior hyperparameters, copied from the model configuration.
  double prior_coef_variance = 1000.0;
  double prior_gamma_shape = 1.0;
  double prior_gamma_rate = 0.01;

  int likelihood_count() const;
  CalendarMonth month_of(int t) const { return start.plus_months(t - 1); }

  /// Raw-scale value from a model-scale one (identity when the outcome was
  /// not standardized).
  double to_raw(double model_scale) const {
    return outcome_scaler ? outcome_scaler->inverse(model_scale) : model_scale;
  }
  double to_model(double raw) const {
    return outcome_scaler ? outcome_scaler->transform(raw) : raw;
  }
};

/// Builds model inputs from a dataset: selects the outcome and covariates
/// named by `config`, fits scalers on the training window only (excluding
/// `exclude_months`, used by cross-validation), standardizes, builds the
/// 12-month lag on the outcome scale, and sets the likelihood mask to
/// months 13..T minus exclusions.
///
/// `outcome_name` picks the outcome column. train_end must be month >= 13
/// of the dataset. Missing values inside the likelihood mask are an error;
/// outside it they are tolerated.
PreparedModelInput prepare(const Dataset& dataset, const std::string& outcome_name,
                           const ModelConfig& config, const CalendarMonth& train_end,
                           const std::set<CalendarMonth>& exclude_months = {});

}  // namespace rw2cf

#endif
