// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/model.hpp"

#include <cmath>
#include <unordered_set>

#include "rw2cf/errors.hpp"

namespace rw2cf {

void ModelConfig::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& name : covariate_names) {
    if (name.empty()) throw ValidationError("empty covariate name");
    if (!seen.insert(name).second) {
      throw ValidationError("duplicate covariate '" + name + "'");
    }
  }
  if (!(prior_coef_variance > 0)) throw ValidationError("prior_coef_variance must be > 0");
  if (!(prior_gamma_shape > 0)) throw ValidationError("prior_gamma_shape must be > 0");
  if (!(prior_gamma_rate > 0)) throw ValidationError("prior_gamma_rate must be > 0");
}

void SamplerSettings::validate() const {
  if (chains < 1) throw ValidationError("chains must be >= 1");
  if (burn_in < 0) throw ValidationError("burn_in must be >= 0");
  if (thin < 1) throw ValidationError("thin must be >= 1");
  if (iterations < burn_in + thin) {
    throw ValidationError("iterations must leave at least one retained draw after burn-in");
  }
}

bool ModelState::all_finite() const {
  if (!std::isfinite(beta0) || !std::isfinite(gamma) || !std::isfinite(tau) ||
      !std::isfinite(tau_e)) {
    return false;
  }
  return beta.allFinite() && u.allFinite();
}

}  // namespace rw2cf
