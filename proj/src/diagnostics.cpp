// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

namespace rw2cf {

namespace {

// Halve every chain (dropping a trailing element when odd), truncating all
// pieces to a common length.
std::vector<std::vector<double>> split_halves(const std::vector<std::vector<double>>& chains) {
  std::size_t shortest = SIZE_MAX;
  for (const auto& c : chains) shortest = std::min(shortest, c.size());
  if (shortest == SIZE_MAX) shortest = 0;
  std::size_t half = shortest / 2;
  std::vector<std::vector<double>> out;
  if (half == 0) return out;
  for (const auto& c : chains) {
    out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
    out.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(half),
                     c.begin() + static_cast<std::ptrdiff_t>(2 * half));
  }
  return out;
}

struct VarianceParts {
  double within = 0;
  double var_plus = 0;
  std::size_t n = 0;
  bool ok = false;
};

VarianceParts variance_parts(const std::vector<std::vector<double>>& seqs) {
  VarianceParts parts;
  if (seqs.size() < 2) return parts;
  std::size_t n = seqs.front().size();
  if (n < 2) return parts;
  double m = static_cast<double>(seqs.size());
  double grand = 0;
  std::vector<double> means;
  for (const auto& s : seqs) {
    double mean = 0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(n);
    means.push_back(mean);
    grand += mean;
  }
  grand /= m;
  double between = 0;
  for (double mu : means) between += (mu - grand) * (mu - grand);
  between *= static_cast<double>(n) / (m - 1.0);
  double within = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    double ss = 0;
    for (double v : seqs[i]) ss += (v - means[i]) * (v - means[i]);
    within += ss / (static_cast<double>(n) - 1.0);
  }
  within /= m;
  parts.within = within;
  parts.var_plus = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * within +
                   between / static_cast<double>(n);
  parts.n = n;
  parts.ok = true;
  return parts;
}

}  // namespace

std::optional<double> split_rhat(const std::vector<std::vector<double>>& chains) {
  if (chains.size() < 2) return std::nullopt;
  auto seqs = split_halves(chains);
  auto parts = variance_parts(seqs);
  if (!parts.ok || !(parts.within > 0)) return std::nullopt;
  return std::sqrt(parts.var_plus / parts.within);
}

std::optional<double> effective_sample_size(const std::vector<std::vector<double>>& chains) {
  auto seqs = split_halves(chains);
  auto parts = variance_parts(seqs);
  if (!parts.ok || !(parts.var_plus > 0)) return std::nullopt;
  std::size_t n = parts.n;
  double m = static_cast<double>(seqs.size());

  // Variogram autocorrelations rho_t = 1 - V_t / (2 var+).
  std::vector<double> rho;
  rho.push_back(1.0);
  for (std::size_t t = 1; t < n; ++t) {
    double vt = 0;
    std::size_t count = 0;
    for (const auto& s : seqs) {
      for (std::size_t i = t; i < n; ++i) {
        double d = s[i] - s[i - t];
        vt += d * d;
        ++count;
      }
    }
    vt /= static_cast<double>(count);
    rho.push_back(1.0 - vt / (2.0 * parts.var_plus));
  }

  // Geyer: sum pairs while positive, enforcing a nonincreasing sequence.
  double tau = 0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; 2 * k + 1 < rho.size(); ++k) {
    double pair = rho[2 * k] + rho[2 * k + 1];
    if (pair <= 0) break;
    pair = std::min(pair, prev_pair);
    tau += pair;
    prev_pair = pair;
  }
  tau = 2.0 * tau - 1.0;
  if (!(tau > 0)) tau = 1.0;
  return m * static_cast<double>(n) / tau;
}

std::map<std::string, ParameterDiagnostics> compute_diagnostics(const PosteriorDraws& draws) {
  std::map<int, std::vector<std::size_t>> by_chain;
  for (std::size_t i = 0; i < draws.chain_id.size(); ++i) {
    by_chain[draws.chain_id[i]].push_back(i);
  }

  auto chains_of = [&](const std::vector<double>& column) {
    std::vector<std::vector<double>> chains;
    for (const auto& [id, rows] : by_chain) {
      std::vector<double> seq;
      seq.reserve(rows.size());
      for (std::size_t r : rows) seq.push_back(column[r]);
      chains.push_back(std::move(seq));
    }
    return chains;
  };

  auto diag_of = [&](const std::vector<double>& column) {
    ParameterDiagnostics d;
    auto chains = chains_of(column);
    d.rhat = split_rhat(chains);
    d.ess = effective_sample_size(chains);
    d.mean = mean_of(column);
    d.sd = column.size() >= 2 ? sd_of(column) : 0.0;
    return d;
  };

  std::map<std::string, ParameterDiagnostics> out;
  out["beta0"] = diag_of(draws.beta0);
  for (const auto& name : draws.coef_names) {
    out["beta." + name] = diag_of(draws.column("beta." + name));
  }
  if (draws.has_gamma) out["gamma"] = diag_of(draws.gamma);
  out["tau"] = diag_of(draws.tau);
  out["tau_e"] = diag_of(draws.tau_e);

  ParameterDiagnostics worst;
  bool have_worst = false;
  for (int t = 1; t <= draws.T; ++t) {
    ParameterDiagnostics d = diag_of(draws.column("u." + std::to_string(t)));
    bool beats = !have_worst;
    if (have_worst && d.rhat && worst.rhat && *d.rhat > *worst.rhat) beats = true;
    if (have_worst && d.rhat && !worst.rhat) beats = true;
    if (beats) {
      worst = d;
      have_worst = true;
    }
    if (d.ess && (!worst.ess || *d.ess < *worst.ess)) worst.ess = d.ess;
  }
  if (have_worst) out["u.worst"] = worst;
  return out;
}

}  // namespace rw2cf
