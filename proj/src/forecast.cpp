// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/forecast.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rw2cf/errors.hpp"
#include "rw2cf/rw2.hpp"

namespace rw2cf {

ForecastInput build_forecast_input(const Dataset& dataset, const std::string& outcome_name,
                                   const PreparedModelInput& input,
                                   const CalendarMonth& horizon_start,
                                   const CalendarMonth& horizon_end) {
  CalendarMonth expected = input.start.plus_months(input.T);
  if (horizon_start != expected) {
    throw ValidationError("forecast must start at " + expected.str() +
                          ", immediately after the training window, got " +
                          horizon_start.str());
  }
  if (horizon_end < horizon_start) {
    throw ValidationError("horizon end " + horizon_end.str() + " precedes " +
                          horizon_start.str());
  }
  int H = horizon_end.months_since(horizon_start) + 1;
  const MonthlySeries& outcome = dataset.column(outcome_name);

  ForecastInput out;
  out.covariates.resize(H, static_cast<int>(input.covariate_names.size()));
  out.lag12.resize(H);
  out.observed.resize(H);
  for (int h = 0; h < H; ++h) {
    CalendarMonth m = horizon_start.plus_months(h);
    out.months.push_back(m);
    for (std::size_t j = 0; j < input.covariate_names.size(); ++j) {
      double v = dataset.column(input.covariate_names[j]).at(m);
      if (is_missing(v)) {
        throw ValidationError("covariate '" + input.covariate_names[j] + "' missing at " +
                              m.str());
      }
      out.covariates(h, static_cast<int>(j)) = v;
    }
    if (input.has_lag) {
      double lag = outcome.at(m.plus_months(-12));
      if (is_missing(lag)) {
        throw ValidationError("12-month-lag outcome missing for forecast month " + m.str());
      }
      out.lag12[h] = lag;
    } else {
      out.lag12[h] = 0.0;
    }
    out.observed[h] = outcome.at(m);
  }
  return out;
}

Eigen::MatrixXd predict_counterfactual(const PosteriorDraws& draws, const ForecastInput& forecast,
                                       const PreparedModelInput& input, std::uint64_t seed) {
  if (draws.T != input.T) {
    throw ValidationError("draws cover " + std::to_string(draws.T) +
                          " months but the prepared input has " + std::to_string(input.T));
  }
  if (draws.coef_names != input.covariate_names) {
    throw ValidationError("draws were fitted with a different covariate set");
  }
  int H = static_cast<int>(forecast.months.size());
  int n = draws.rows();
  if (n == 0) throw ValidationError("no posterior draws");

  // Horizon regressors on the model scale, fixed across draws.
  Eigen::MatrixXd Xz(H, draws.k());
  Eigen::VectorXd lag_model(H);
  for (int h = 0; h < H; ++h) {
    for (int j = 0; j < draws.k(); ++j) {
      Xz(h, j) = input.covariate_scalers[static_cast<std::size_t>(j)].transform(
          forecast.covariates(h, j));
    }
    lag_model[h] = input.has_lag ? input.to_model(forecast.lag12[h]) : 0.0;
  }

  Rng rng(mix_seed(seed, 77001));
  Eigen::MatrixXd pred(n, H);
  for (int i = 0; i < n; ++i) {
    auto r = static_cast<std::size_t>(i);
    double v_e = 1.0 / draws.tau_e[r];
    double v = 1.0 / draws.tau[r];
    Eigen::VectorXd trend = rw2_forward_simulate(draws.u(i, input.T - 2),
                                                 draws.u(i, input.T - 1), H, v_e, rng);
    double noise_sd = std::sqrt(v);
    for (int h = 0; h < H; ++h) {
      double lambda = draws.beta0[r] + trend[h];
      for (int j = 0; j < draws.k(); ++j) lambda += Xz(h, j) * draws.beta(i, j);
      if (input.has_lag) lambda += draws.gamma[r] * lag_model[h];
      pred(i, h) = input.to_raw(lambda + noise_sd * rng.normal());
    }
  }
  return pred;
}

std::string flag_significance(double excess_lo, double excess_hi) {
  if (excess_hi < 0.0) return "decrease";
  if (excess_lo > 0.0) return "increase";
  return "indistinguishable";
}

CounterfactualSummary summarize_prediction(const Eigen::MatrixXd& pred,
                                           const ForecastInput& forecast) {
  int H = static_cast<int>(forecast.months.size());
  int n = static_cast<int>(pred.rows());
  if (pred.cols() != H) throw ValidationError("prediction/forecast month count mismatch");

  CounterfactualSummary out;
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  for (int h = 0; h < H; ++h) {
    MonthSummary ms;
    ms.month = forecast.months[static_cast<std::size_t>(h)];
    ms.observed = forecast.observed[h];
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = pred(i, h);
    ms.pred_median = quantile(col, 0.5);
    ms.pred_lo = quantile(col, 0.025);
    ms.pred_hi = quantile(col, 0.975);
    if (!is_missing(ms.observed)) {
      std::vector<double> excess(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        excess[static_cast<std::size_t>(i)] = ms.observed - pred(i, h);
        total[static_cast<std::size_t>(i)] += excess[static_cast<std::size_t>(i)];
      }
      ms.excess_median = quantile(excess, 0.5);
      ms.excess_lo = quantile(excess, 0.025);
      ms.excess_hi = quantile(excess, 0.975);
      ms.flag = flag_significance(ms.excess_lo, ms.excess_hi);
      ++out.observed_months;
    } else {
      ms.excess_median = kMissing;
      ms.excess_lo = kMissing;
      ms.excess_hi = kMissing;
      ms.flag = "";
    }
    out.months.push_back(std::move(ms));
  }
  if (out.observed_months > 0) {
    out.total_excess_median = quantile(total, 0.5);
    out.total_excess_lo = quantile(total, 0.025);
    out.total_excess_hi = quantile(total, 0.975);
  } else {
    out.total_excess_median = kMissing;
    out.total_excess_lo = kMissing;
    out.total_excess_hi = kMissing;
  }
  return out;
}

void write_counterfactual_csv(const CounterfactualSummary& summary, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "month,observed,pred_median,pred_lo,pred_hi,"
         "excess_median,excess_lo,excess_hi,flag\n";
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
    put(ms.excess_median);
    put(ms.excess_lo);
    put(ms.excess_hi);
    out << ',' << ms.flag << '\n';
  }
  if (!out) throw ParseError("write failed for " + path);
}

CounterfactualSummary read_counterfactual_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected =
      "month,observed,pred_median,pred_lo,pred_hi,excess_median,excess_lo,excess_hi,flag";
  if (line != expected) throw ParseError(path + ": unexpected header");

  CounterfactualSummary out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (cells.size() != 9) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 9 cells");
    }
    auto num = [&](const std::string& c) {
      if (c.empty()) return kMissing;
      const char* begin = c.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad cell '" + c + "'");
      }
      return v;
    };
    MonthSummary ms;
    ms.month = CalendarMonth::parse(cells[0]);
    ms.observed = num(cells[1]);
    ms.pred_median = num(cells[2]);
    ms.pred_lo = num(cells[3]);
    ms.pred_hi = num(cells[4]);
    ms.excess_median = num(cells[5]);
    ms.excess_lo = num(cells[6]);
    ms.excess_hi = num(cells[7]);
    ms.flag = cells[8];
    if (!is_missing(ms.observed)) ++out.observed_months;
    out.months.push_back(std::move(ms));
  }
  if (out.months.empty()) throw ParseError(path + ": no rows");
  // Draw-wise totals cannot be reconstructed from the summary file.
  out.total_excess_median = kMissing;
  out.total_excess_lo = kMissing;
  out.total_excess_hi = kMissing;
  return out;
}

}  // namespace rw2cf
