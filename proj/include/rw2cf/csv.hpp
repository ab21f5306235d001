// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_CSV_HPP
#define RW2CF_CSV_HPP

#include <string>

#include "rw2cf/series.hpp"

namespace rw2cf {

/// Loads a monthly table from a CSV file.
///
/// Contract: UTF-8, comma separated, header `month,<var1>,<var2>,...`;
/// month cells are strict YYYY-MM; an empty cell is a missing value. Rows
/// may arrive unordered and are sorted; duplicate months are rejected;
/// calendar gaps are padded with missing rows and recorded in
/// Dataset::gap_months.
Dataset load_csv(const std::string& path);

/// Writes a dataset back in the same format (missing -> empty cell).
void write_csv(const Dataset& dataset, const std::string& path);

}  // namespace rw2cf

#endif
