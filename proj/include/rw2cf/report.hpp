// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_REPORT_HPP
#define RW2CF_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "rw2cf/diagnostics.hpp"
#include "rw2cf/draws.hpp"
#include "rw2cf/evaluation.hpp"
#include "rw2cf/forecast.hpp"

namespace rw2cf {

struct CoefficientSummary {
  std::string name;   // "beta0", covariate names, "lag12"
  double median, lo, hi;
};

/// Median and central 95% interval for each regression coefficient, in
/// design-matrix order. Variance parameters are covered by diagnostics.
std::vector<CoefficientSummary> summarize_coefficients(const PosteriorDraws& draws);

void write_coefficients_json(const std::vector<CoefficientSummary>& table,
                             const std::string& path);
void write_diagnostics_json(const std::map<std::string, ParameterDiagnostics>& diag,
                            const std::string& path);
void write_excess_json(const CounterfactualSummary& summary, const std::string& path);
void write_cv_report_json(const CvReport& report, const std::string& path);

void write_ribbon_csv(const CounterfactualSummary& summary, const std::string& path);

/// Markdown summary of the counterfactual comparison; lists months whose
/// excess interval excludes zero and the largest decrease and increase.
/// Values rounded for presentation only; totals stay in excess.json.
std::string render_report_markdown(const CounterfactualSummary& summary,
                                   const std::string& outcome_label);

/// Minimal static chart: observed line over the 95% prediction ribbon.
std::string render_ribbon_svg(const CounterfactualSummary& summary,
                              const std::string& outcome_label);

/// Presentation rounding: |value| >= 100 renders as a comma-grouped integer,
/// anything else with two decimals.
std::string format_presentation(double value);

}  // namespace rw2cf

#endif
