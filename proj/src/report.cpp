// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rw2cf/errors.hpp"
#include "rw2cf/series.hpp"

namespace rw2cf {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
  if (!out) throw ParseError("write failed for " + path);
}

ordered_json number_or_null(double v) {
  if (is_missing(v)) return nullptr;
  return v;
}

ordered_json optional_or_null(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::vector<CoefficientSummary> summarize_coefficients(const PosteriorDraws& draws) {
  std::vector<CoefficientSummary> table;
  auto add = [&](const std::string& label, const std::vector<double>& column) {
    CoefficientSummary row;
    row.name = label;
    row.median = quantile(column, 0.5);
    row.lo = quantile(column, 0.025);
    row.hi = quantile(column, 0.975);
    table.push_back(row);
  };
  add("beta0", draws.beta0);
  for (const auto& name : draws.coef_names) add(name, draws.column("beta." + name));
  if (draws.has_gamma) add("lag12", draws.gamma);
  return table;
}

void write_coefficients_json(const std::vector<CoefficientSummary>& table,
                             const std::string& path) {
  ordered_json doc;
  doc["coefficients"] = ordered_json::array();
  for (const auto& row : table) {
    doc["coefficients"].push_back({{"name", row.name},
                                   {"median", row.median},
                                   {"lower95", row.lo},
                                   {"upper95", row.hi}});
  }
  write_text(path, doc.dump(2) + "\n");
}

void write_diagnostics_json(const std::map<std::string, ParameterDiagnostics>& diag,
                            const std::string& path) {
  ordered_json doc;
  doc["parameters"] = ordered_json::object();
  for (const auto& [name, d] : diag) {
    doc["parameters"][name] = {{"rhat", optional_or_null(d.rhat)},
                               {"ess", optional_or_null(d.ess)},
                               {"mean", number_or_null(d.mean)},
                               {"sd", number_or_null(d.sd)}};
  }
  write_text(path, doc.dump(2) + "\n");
}

void write_excess_json(const CounterfactualSummary& summary, const std::string& path) {
  ordered_json doc;
  doc["months"] = ordered_json::array();
  for (const auto& ms : summary.months) {
    doc["months"].push_back({{"month", ms.month.str()},
                             {"observed", number_or_null(ms.observed)},
                             {"pred_median", ms.pred_median},
                             {"pred_lower95", ms.pred_lo},
                             {"pred_upper95", ms.pred_hi},
                             {"excess_median", number_or_null(ms.excess_median)},
                             {"excess_lower95", number_or_null(ms.excess_lo)},
                             {"excess_upper95", number_or_null(ms.excess_hi)},
                             {"flag", ms.flag}});
  }
  doc["total"] = {{"months_with_observations", summary.observed_months},
                  {"excess_median", number_or_null(summary.total_excess_median)},
                  {"excess_lower95", number_or_null(summary.total_excess_lo)},
                  {"excess_upper95", number_or_null(summary.total_excess_hi)}};
  write_text(path, doc.dump(2) + "\n");
}

void write_cv_report_json(const CvReport& report, const std::string& path) {
  ordered_json doc;
  doc["folds"] = ordered_json::array();
  for (const auto& f : report.folds) {
    doc["folds"].push_back({{"year", f.held_out_year},
                            {"test_points", f.test_points},
                            {"adjusted_r2", optional_or_null(f.adj_r2)},
                            {"coverage95", optional_or_null(f.coverage)}});
  }
  doc["pooled"] = {{"test_points", report.pooled_points},
                   {"adjusted_r2", optional_or_null(report.pooled_adj_r2)},
                   {"coverage95", optional_or_null(report.pooled_coverage)}};
  write_text(path, doc.dump(2) + "\n");
}

void write_ribbon_csv(const CounterfactualSummary& summary, const std::string& path) {
  std::ostringstream out;
  out << "month,observed,pred_median,pred_lo,pred_hi\n";
  char buf[32];
  auto put = [&](double v) {
    out << ',';
    if (!is_missing(v)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf;
    }
  };
  for (const auto& ms : summary.months) {
    out << ms.month.str();
    put(ms.observed);
    put(ms.pred_median);
    put(ms.pred_lo);
    put(ms.pred_hi);
    out << '\n';
  }
  write_text(path, out.str());
}

std::string format_presentation(double value) {
  if (is_missing(value)) return "n/a";
  if (std::abs(value) >= 100.0) {
    long long rounded = std::llround(value);
    bool negative = rounded < 0;
    unsigned long long magnitude =
        negative ? 0ULL - static_cast<unsigned long long>(rounded)
                 : static_cast<unsigned long long>(rounded);
    std::string digits = std::to_string(magnitude);
    std::string grouped;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      if (count > 0 && count % 3 == 0) grouped.push_back(',');
      grouped.push_back(*it);
      ++count;
    }
    std::reverse(grouped.begin(), grouped.end());
    return negative ? "-" + grouped : grouped;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string render_report_markdown(const CounterfactualSummary& summary,
                                   const std::string& outcome_label) {
  std::ostringstream md;
  md << "# Counterfactual comparison: " << outcome_label << "\n\n";
  md << "Monthly observed values against the model's no-intervention prediction.\n";
  md << "Intervals are central 95% posterior-predictive ranges; a month is "
        "flagged when its excess interval excludes zero.\n\n";

  md << "| Month | Observed | Predicted (95% CI) | Excess (95% CI) | Flag |\n";
  md << "|---|---|---|---|---|\n";
  for (const auto& ms : summary.months) {
    md << "| " << ms.month.str() << " | " << format_presentation(ms.observed) << " | "
       << format_presentation(ms.pred_median) << " (" << format_presentation(ms.pred_lo)
       << ", " << format_presentation(ms.pred_hi) << ") | ";
    if (is_missing(ms.excess_median)) {
      md << "n/a | |\n";
    } else {
      md << format_presentation(ms.excess_median) << " ("
         << format_presentation(ms.excess_lo) << ", " << format_presentation(ms.excess_hi)
         << ") | " << ms.flag << " |\n";
    }
  }
  md << "\n## Statistically important months\n\n";
  if (summary.observed_months == 0) {
    md << "No excess could be computed: no months requested with observed values.\n";
    return md.str();
  }

  bool any = false;
  const MonthSummary* largest_decrease = nullptr;
  const MonthSummary* largest_increase = nullptr;
  for (const auto& ms : summary.months) {
    if (ms.flag == "decrease") {
      any = true;
      md << "- " << ms.month.str() << ": decrease, excess "
         << format_presentation(ms.excess_median) << " (" << format_presentation(ms.excess_lo)
         << ", " << format_presentation(ms.excess_hi) << ")\n";
      if (!largest_decrease || ms.excess_median < largest_decrease->excess_median) {
        largest_decrease = &ms;
      }
    } else if (ms.flag == "increase") {
      any = true;
      md << "- " << ms.month.str() << ": increase, excess "
         << format_presentation(ms.excess_median) << " (" << format_presentation(ms.excess_lo)
         << ", " << format_presentation(ms.excess_hi) << ")\n";
      if (!largest_increase || ms.excess_median > largest_increase->excess_median) {
        largest_increase = &ms;
      }
    }
  }
  if (!any) {
    md << "None: every observed month lies inside its 95% interval.\n";
  } else {
    md << "\n";
    if (largest_decrease) {
      md << "Largest decrease: " << largest_decrease->month.str() << " ("
         << format_presentation(largest_decrease->excess_median) << ")\n";
    }
    if (largest_increase) {
      md << "Largest increase: " << largest_increase->month.str() << " ("
         << format_presentation(largest_increase->excess_median) << ")\n";
    }
  }
  return md.str();
}

std::string render_ribbon_svg(const CounterfactualSummary& summary,
                              const std::string& outcome_label) {
  const double width = 900, height = 420;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  int H = static_cast<int>(summary.months.size());

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& ms : summary.months) {
    lo = std::min({lo, ms.pred_lo, is_missing(ms.observed) ? lo : ms.observed});
    hi = std::max({hi, ms.pred_hi, is_missing(ms.observed) ? hi : ms.observed});
  }
  if (!(hi > lo)) {
    hi = lo + 1;
    lo -= 1;
  }
  double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  auto x_of = [&](int h) {
    return H > 1 ? left + plot_w * h / (H - 1) : left + plot_w / 2;
  };
  auto y_of = [&](double v) { return top + plot_h * (1.0 - (v - lo) / (hi - lo)); };
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << outcome_label
      << ": observed vs predicted (95% ribbon)</text>\n";

  svg << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
  for (int h = 0; h < H; ++h) {
    svg << coord(x_of(h)) << ',' << coord(y_of(summary.months[static_cast<std::size_t>(h)].pred_hi)) << ' ';
  }
  for (int h = H - 1; h >= 0; --h) {
    svg << coord(x_of(h)) << ',' << coord(y_of(summary.months[static_cast<std::size_t>(h)].pred_lo)) << ' ';
  }
  svg << "\"/>\n";

  auto polyline = [&](const char* color, auto value_of, const char* dash) {
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (dash[0] != '\0') svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"";
    for (int h = 0; h < H; ++h) {
      double v = value_of(summary.months[static_cast<std::size_t>(h)]);
      if (is_missing(v)) continue;
      svg << coord(x_of(h)) << ',' << coord(y_of(v)) << ' ';
    }
    svg << "\"/>\n";
  };
  polyline("#2171b5", [](const MonthSummary& ms) { return ms.pred_median; }, "6,4");
  polyline("#d94801", [](const MonthSummary& ms) { return ms.observed; }, "");

  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";

  int step = std::max(1, H / 6);
  for (int h = 0; h < H; h += step) {
    svg << "<text x=\"" << coord(x_of(h)) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << summary.months[static_cast<std::size_t>(h)].month.str() << "</text>\n";
  }
  for (double frac : {0.0, 0.5, 1.0}) {
    double v = lo + frac * (hi - lo);
    svg << "<text x=\"" << left - 8 << "\" y=\"" << coord(y_of(v) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_presentation(v) << "</text>\n";
  }
  svg << "<text x=\"" << left + 14 << "\" y=\"" << top + 14
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d94801\">observed</text>\n";
  svg << "<text x=\"" << left + 14 << "\" y=\"" << top + 30
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#2171b5\">predicted"
         " median</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rw2cf
