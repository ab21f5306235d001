// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rw2cf/errors.hpp"

namespace rw2cf {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, const std::string& context) {
  if (cell.empty()) return kMissing;
  const char* begin = cell.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0')) {
    throw ParseError("bad numeric cell '" + cell + "' " + context);
  }
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_line(line);
  if (header.empty() || header.front() != "month") {
    throw ParseError(path + ": first header column must be 'month'");
  }
  if (header.size() < 2) throw ParseError(path + ": no data columns");

  std::map<CalendarMonth, std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    CalendarMonth m = CalendarMonth::parse(cells[0]);
    if (rows.count(m)) {
      throw ParseError(path + ": duplicate month " + m.str());
    }
    std::vector<double> values;
    values.reserve(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      values.push_back(parse_cell(cells[j], "at " + path + ":" + std::to_string(line_no)));
    }
    rows.emplace(m, std::move(values));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  Dataset ds;
  ds.label = std::filesystem::path(path).filename().string();
  ds.start = rows.begin()->first;
  ds.length = rows.rbegin()->first.months_since(ds.start) + 1;
  ds.columns.resize(header.size() - 1);
  for (std::size_t j = 1; j < header.size(); ++j) {
    auto& col = ds.columns[j - 1];
    col.name = header[j];
    col.start = ds.start;
    col.values.assign(static_cast<std::size_t>(ds.length), kMissing);
  }
  for (const auto& [m, values] : rows) {
    auto t = static_cast<std::size_t>(m.months_since(ds.start));
    for (std::size_t j = 0; j < values.size(); ++j) ds.columns[j].values[t] = values[j];
  }
  for (int t = 0; t < ds.length; ++t) {
    CalendarMonth m = ds.start.plus_months(t);
    if (!rows.count(m)) ds.gap_months.push_back(m);
  }
  return ds;
}

void write_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "month";
  for (const auto& c : dataset.columns) out << ',' << c.name;
  out << '\n';
  char buf[32];
  for (int t = 0; t < dataset.length; ++t) {
    out << dataset.start.plus_months(t).str();
    for (const auto& c : dataset.columns) {
      out << ',';
      double v = c.values[static_cast<std::size_t>(t)];
      if (!is_missing(v)) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
      }
    }
    out << '\n';
  }
  if (!out) throw ParseError("write failed for " + path);
}

}  // namespace rw2cf
