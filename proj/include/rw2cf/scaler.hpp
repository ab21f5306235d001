// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_SCALER_HPP
#define RW2CF_SCALER_HPP

#include <utility>
#include <vector>

#include "rw2cf/calendar.hpp"

namespace rw2cf {

/// Standardization constants fitted on a training window.
/// sd is the sample (n-1) standard deviation.
struct ScalerParams {
  double mean = 0.0;
  double sd = 1.0;
  CalendarMonth fit_start;
  CalendarMonth fit_end;

  double transform(double x) const { return (x - mean) / sd; }
  double inverse(double z) const { return z * sd + mean; }
};

/// Fits a scaler on `window` (length >= 2, non-constant) and returns the
/// standardized values. Throws ValidationError on a degenerate window.
std::pair<std::vector<double>, ScalerParams> standardize(const std::vector<double>& window);

std::vector<double> destandardize(const std::vector<double>& z, const ScalerParams& scaler);

/// Scaler fit alone (used when the transform is applied lazily).
ScalerParams fit_scaler(const std::vector<double>& window);

}  // namespace rw2cf

#endif
