// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/scaler.hpp"

#include <cmath>

#include "rw2cf/errors.hpp"
#include "rw2cf/series.hpp"

namespace rw2cf {

ScalerParams fit_scaler(const std::vector<double>& window) {
  if (window.size() < 2) throw ValidationError("scaler window needs at least 2 values");
  double sum = 0.0;
  for (double x : window) {
    if (is_missing(x)) throw ValidationError("missing value in scaler window");
    sum += x;
  }
  double n = static_cast<double>(window.size());
  double mean = sum / n;
  double ss = 0.0;
  for (double x : window) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw ValidationError("constant scaler window, sd = 0");
  ScalerParams p;
  p.mean = mean;
  p.sd = sd;
  return p;
}

std::pair<std::vector<double>, ScalerParams> standardize(const std::vector<double>& window) {
  ScalerParams p = fit_scaler(window);
  std::vector<double> z;
  z.reserve(window.size());
  for (double x : window) z.push_back(p.transform(x));
  return {std::move(z), p};
}

std::vector<double> destandardize(const std::vector<double>& z, const ScalerParams& scaler) {
  std::vector<double> x;
  x.reserve(z.size());
  for (double v : z) x.push_back(scaler.inverse(v));
  return x;
}

}  // namespace rw2cf
