// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/draws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rw2cf/errors.hpp"

namespace rw2cf {

std::vector<std::string> PosteriorDraws::column_names() const {
  std::vector<std::string> names = {"beta0"};
  for (const auto& c : coef_names) names.push_back("beta." + c);
  names.push_back("gamma");
  names.push_back("tau");
  names.push_back("tau_e");
  for (int t = 1; t <= T; ++t) names.push_back("u." + std::to_string(t));
  return names;
}

std::vector<double> PosteriorDraws::column(const std::string& name) const {
  auto n = static_cast<std::size_t>(rows());
  if (name == "beta0") return beta0;
  if (name == "gamma") return gamma;
  if (name == "tau") return tau;
  if (name == "tau_e") return tau_e;
  if (name.rfind("beta.", 0) == 0) {
    std::string coef = name.substr(5);
    for (std::size_t j = 0; j < coef_names.size(); ++j) {
      if (coef_names[j] == coef) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = beta(static_cast<int>(i), static_cast<int>(j));
        return out;
      }
    }
  }
  if (name.rfind("u.", 0) == 0) {
    int t = std::atoi(name.c_str() + 2);
    if (t >= 1 && t <= T) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = u(static_cast<int>(i), t - 1);
      return out;
    }
  }
  throw ValidationError("no draw column named '" + name + "'");
}

void write_draws_csv(const PosteriorDraws& draws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << "chain,iter";
  for (const auto& name : draws.column_names()) out << ',' << name;
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << ',' << buf;
  };
  for (int i = 0; i < draws.rows(); ++i) {
    auto r = static_cast<std::size_t>(i);
    out << draws.chain_id[r] << ',' << draws.iteration[r];
    put(draws.beta0[r]);
    for (int j = 0; j < draws.k(); ++j) put(draws.beta(i, j));
    put(draws.gamma[r]);
    put(draws.tau[r]);
    put(draws.tau_e[r]);
    for (int t = 0; t < draws.T; ++t) put(draws.u(i, t));
    out << '\n';
  }
  if (!out) throw ParseError("write failed for " + path);
}

PosteriorDraws read_draws_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  PosteriorDraws draws;
  std::size_t pos = 0;
  auto expect = [&](const std::string& name) {
    if (pos >= header.size() || header[pos] != name) {
      throw ParseError(path + ": expected column '" + name + "' at position " +
                       std::to_string(pos + 1));
    }
    ++pos;
  };
  expect("chain");
  expect("iter");
  expect("beta0");
  while (pos < header.size() && header[pos].rfind("beta.", 0) == 0) {
    draws.coef_names.push_back(header[pos].substr(5));
    ++pos;
  }
  expect("gamma");
  expect("tau");
  expect("tau_e");
  int T = 0;
  while (pos < header.size() && header[pos].rfind("u.", 0) == 0) {
    ++T;
    if (header[pos] != "u." + std::to_string(T)) {
      throw ParseError(path + ": trend columns out of order at '" + header[pos] + "'");
    }
    ++pos;
  }
  if (pos != header.size()) {
    throw ParseError(path + ": unexpected column '" + header[pos] + "'");
  }
  if (T == 0) throw ParseError(path + ": no trend columns");
  draws.T = T;

  std::vector<std::vector<double>> cells;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(header.size());
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const char* begin = cell.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad cell '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != header.size()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": wrong cell count");
    }
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw ParseError(path + ": no draws");

  int n = static_cast<int>(cells.size());
  int k = static_cast<int>(draws.coef_names.size());
  draws.chain_id.resize(cells.size());
  draws.iteration.resize(cells.size());
  draws.beta0.resize(cells.size());
  draws.gamma.resize(cells.size());
  draws.tau.resize(cells.size());
  draws.tau_e.resize(cells.size());
  draws.beta.resize(n, k);
  draws.u.resize(n, T);
  for (int i = 0; i < n; ++i) {
    const auto& row = cells[static_cast<std::size_t>(i)];
    auto r = static_cast<std::size_t>(i);
    std::size_t c = 0;
    draws.chain_id[r] = static_cast<int>(row[c++]);
    draws.iteration[r] = static_cast<int>(row[c++]);
    draws.beta0[r] = row[c++];
    for (int j = 0; j < k; ++j) draws.beta(i, j) = row[c++];
    draws.gamma[r] = row[c++];
    draws.tau[r] = row[c++];
    draws.tau_e[r] = row[c++];
    for (int t = 0; t < T; ++t) draws.u(i, t) = row[c++];
  }
  return draws;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ValidationError("quantile of an empty set");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile level must be in [0, 1]");
  std::sort(values.begin(), values.end());
  double h = (static_cast<double>(values.size()) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  double frac = h - std::floor(h);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("mean of an empty set");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sd_of(const std::vector<double>& values) {
  if (values.size() < 2) throw ValidationError("sd needs at least 2 values");
  double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));
}

}  // namespace rw2cf
