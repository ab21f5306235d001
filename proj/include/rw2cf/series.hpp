// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_SERIES_HPP
#define RW2CF_SERIES_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rw2cf/calendar.hpp"

namespace rw2cf {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double x) { return std::isnan(x); }

/// Contiguous monthly observations for one variable. NaN marks a missing
/// value.
struct MonthlySeries {
  std::string name;
  CalendarMonth start;
  std::vector<double> values;

  int length() const { return static_cast<int>(values.size()); }
  CalendarMonth month_at(int index) const { return start.plus_months(index); }

  /// value at a calendar month; missing when outside the range.
  double at(const CalendarMonth& m) const;
};

/// Shifts a series down by `k` months: output[t] = input[t-k], first k
/// entries missing.
MonthlySeries build_lag(const MonthlySeries& series, int k);

/// A set of monthly series sharing one calendar grid. Which column is the
/// outcome is decided by the model configuration at prepare() time.
struct Dataset {
  std::string label;
  CalendarMonth start;
  int length = 0;
  std::vector<MonthlySeries> columns;
  /// Months that were absent from the source file and padded as missing.
  std::vector<CalendarMonth> gap_months;

  bool has_column(const std::string& name) const;
  const MonthlySeries& column(const std::string& name) const;  // throws ValidationError
  CalendarMonth end() const { return start.plus_months(length - 1); }
  std::vector<std::string> column_names() const;
};

}  // namespace rw2cf

#endif
