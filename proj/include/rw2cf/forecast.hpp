// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_FORECAST_HPP
#define RW2CF_FORECAST_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rw2cf/calendar.hpp"
#include "rw2cf/draws.hpp"
#include "rw2cf/prepare.hpp"
#include "rw2cf/series.hpp"

namespace rw2cf {

/// Everything needed to forecast past the training window: covariates and
/// lag-12 outcomes per horizon month, raw scale, plus observed outcomes for
/// the excess comparison where available (NaN otherwise).
struct ForecastInput {
  std::vector<CalendarMonth> months;   // contiguous, first frame follows training
  Eigen::MatrixXd covariates;          // H x k, raw scale
  Eigen::VectorXd lag12;               // raw scale; ignored when model has no lag
  Eigen::VectorXd observed;            // raw scale, NaN = not observed
};

/// Collects horizon rows from the dataset; errors on a missing covariate or
/// lag value at any horizon month.
ForecastInput build_forecast_input(const Dataset& dataset, const std::string& outcome_name,
                                   const PreparedModelInput& input,
                                   const CalendarMonth& horizon_start,
                                   const CalendarMonth& horizon_end);

/// Posterior-predictive draws per horizon month, raw scale: one column per
/// month, one row per retained posterior draw. Each draw extends the trend
/// by forward simulation with its own v_e and adds observation noise.
Eigen::MatrixXd predict_counterfactual(const PosteriorDraws& draws, const ForecastInput& forecast,
                                       const PreparedModelInput& input, std::uint64_t seed);

struct MonthSummary {
  CalendarMonth month;
  double observed;         // NaN when not observed
  double pred_median, pred_lo, pred_hi;
  double excess_median, excess_lo, excess_hi;  // NaN when observed missing
  std::string flag;        // "decrease", "increase", "indistinguishable", "" if no excess
};

struct CounterfactualSummary {
  std::vector<MonthSummary> months;
  // Total excess over all months with observed values, summarized draw-wise.
  double total_excess_median = 0, total_excess_lo = 0, total_excess_hi = 0;
  int observed_months = 0;
};

CounterfactualSummary summarize_prediction(const Eigen::MatrixXd& pred,
                                           const ForecastInput& forecast);

std::string flag_significance(double excess_lo, double excess_hi);

void write_counterfactual_csv(const CounterfactualSummary& summary, const std::string& path);
CounterfactualSummary read_counterfactual_csv(const std::string& path);

}  // namespace rw2cf

#endif
