// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/series.hpp"

#include <algorithm>

#include "rw2cf/errors.hpp"

namespace rw2cf {

double MonthlySeries::at(const CalendarMonth& m) const {
  int index = m.months_since(start);
  if (index < 0 || index >= length()) return kMissing;
  return values[static_cast<std::size_t>(index)];
}

MonthlySeries build_lag(const MonthlySeries& series, int k) {
  if (k < 1) throw ValidationError("lag must be positive");
  MonthlySeries out;
  out.name = series.name + ".lag" + std::to_string(k);
  out.start = series.start;
  out.values.assign(series.values.size(), kMissing);
  for (std::size_t t = static_cast<std::size_t>(k); t < series.values.size(); ++t) {
    out.values[t] = series.values[t - static_cast<std::size_t>(k)];
  }
  return out;
}

bool Dataset::has_column(const std::string& name) const {
  return std::any_of(columns.begin(), columns.end(),
                     [&](const MonthlySeries& c) { return c.name == name; });
}

const MonthlySeries& Dataset::column(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw ValidationError("no column named '" + name + "' in " + label);
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (const auto& c : columns) names.push_back(c.name);
  return names;
}

}  // namespace rw2cf
