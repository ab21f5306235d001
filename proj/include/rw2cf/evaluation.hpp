// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_EVALUATION_HPP
#define RW2CF_EVALUATION_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "rw2cf/calendar.hpp"
#include "rw2cf/model.hpp"
#include "rw2cf/series.hpp"

namespace rw2cf {

struct CvFold {
  int held_out_year;
  std::vector<CalendarMonth> test_months;  // months of that year present in data
};

/// One fold per requested calendar year found in the data. Requested years
/// with no data rows are an error.
std::vector<CvFold> make_folds(const Dataset& dataset, const std::vector<int>& years);

/// Years eligible for cross-validation when none are requested explicitly:
/// every year strictly before train_end's year with data present, optionally
/// dropping years with fewer than 12 months in the data.
std::vector<int> default_cv_years(const Dataset& dataset, const CalendarMonth& train_end,
                                  bool include_partial);

/// 1 - (1 - R^2)(n - 1)/(n - p - 1), R^2 about the observed mean.
/// nullopt when the observed values have zero variance or n <= p + 1.
std::optional<double> adjusted_r2(const std::vector<double>& observed,
                                  const std::vector<double>& predicted, int p);

/// Fraction of observations inside their closed interval [lo, hi].
double coverage95(const std::vector<double>& observed,
                  const std::vector<std::pair<double, double>>& intervals);

struct FoldResult {
  int held_out_year;
  int test_points;                      // usable test points (lag available)
  std::optional<double> adj_r2;
  std::optional<double> coverage;
};

struct CvReport {
  std::vector<FoldResult> folds;
  int pooled_points = 0;
  std::optional<double> pooled_adj_r2;
  std::optional<double> pooled_coverage;
};

/// Fits one model per fold on all non-test months up to the end of the last
/// requested year, predicts the held-out months from the posterior
/// predictive (observed lag-12 values, trend in-filled by the sampler), and
/// scores with both metrics per fold and pooled.
CvReport run_cv(const Dataset& dataset, const std::string& outcome_name,
                const ModelConfig& config, const SamplerSettings& settings,
                const std::vector<int>& years);

/// Ground-truth generator for recovery and calibration tests.
struct CovariateSpec {
  std::string name;
  double mean = 0;
  double amplitude = 1;     // 12-month sinusoid
  double phase = 0;         // months
  double noise_sd = 1;
};

struct SyntheticSpec {
  int T = 240;
  CalendarMonth start{2000, 1};
  std::string outcome_name = "y";
  double beta0 = 0;
  std::vector<double> beta;
  std::vector<CovariateSpec> covariates;  // same length as beta
  double gamma = 0;
  double v = 1;        // observation variance
  double v_e = 1e-4;   // trend innovation variance
  std::uint64_t seed = 1;

  void validate() const;
};

Dataset generate_synthetic(const SyntheticSpec& spec);

SyntheticSpec synthetic_spec_from_json(const std::string& path);

}  // namespace rw2cf

#endif
