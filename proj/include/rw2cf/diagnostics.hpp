// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_DIAGNOSTICS_HPP
#define RW2CF_DIAGNOSTICS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rw2cf/draws.hpp"

namespace rw2cf {

/// Split R-hat: each chain halved, variance ratio over the halves.
/// Returns nullopt when fewer than 2 chains or all values are identical.
std::optional<double> split_rhat(const std::vector<std::vector<double>>& chains);

/// Effective sample size via the variogram estimator with Geyer
/// initial-monotone truncation. Returns nullopt on zero variance.
std::optional<double> effective_sample_size(const std::vector<std::vector<double>>& chains);

struct ParameterDiagnostics {
  std::optional<double> rhat;
  std::optional<double> ess;
  double mean;
  double sd;
};

/// Diagnostics for every scalar column of the draws (beta0, each beta,
/// gamma, tau, tau_e). Latent sites are summarized by their worst R-hat and
/// smallest ESS under the key "u.worst".
std::map<std::string, ParameterDiagnostics> compute_diagnostics(const PosteriorDraws& draws);

}  // namespace rw2cf

#endif
