// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_GIBBS_HPP
#define RW2CF_GIBBS_HPP

#include <Eigen/Dense>
#include <functional>

#include "rw2cf/draws.hpp"
#include "rw2cf/model.hpp"
#include "rw2cf/prepare.hpp"
#include "rw2cf/rng.hpp"

namespace rw2cf {

/// Joint full conditional of (beta0, beta, gamma): a Gaussian with the given
/// mean and precision matrix. Column order matches the design matrix
/// [1 | X | lag12], with the lag column absent when the model has none.
struct CoefficientConditional {
  Eigen::VectorXd mean;
  Eigen::MatrixXd precision;
};
CoefficientConditional coefficient_conditional(const PreparedModelInput& input,
                                               const ModelState& state);

/// Full conditional of one trend site: combines the random-walk conditional
/// with the site's likelihood contribution (absent for unmasked months).
/// `residual` is y_t minus the non-trend part of the mean.
struct LatentSiteConditional {
  double mean;
  double variance;
};
LatentSiteConditional latent_site_conditional(const PreparedModelInput& input,
                                              const ModelState& state, int t,
                                              double residual);

/// Shape/rate parameters of the two precision full conditionals.
struct GammaParams {
  double shape;
  double rate;
};
GammaParams tau_conditional(const PreparedModelInput& input, const ModelState& state);
GammaParams tau_e_conditional(const PreparedModelInput& input, const ModelState& state);

/// Sweep phases, exposed separately so tests can run with fixed precisions.
void draw_coefficients(const PreparedModelInput& input, ModelState& state, Rng& rng);
/// Updates every trend site in a freshly shuffled order, then recenters the
/// trend to mean zero with the mean moved into beta0.
void draw_latent(const PreparedModelInput& input, ModelState& state, Rng& rng);
void draw_precisions(const PreparedModelInput& input, ModelState& state, Rng& rng);

/// One full sweep in place: the three phases in order.
void gibbs_sweep(const PreparedModelInput& input, ModelState& state, Rng& rng);

ModelState initial_state(const PreparedModelInput& input, Rng& rng);

/// Runs `settings.chains` chains sequentially, each seeded from
/// mix_seed(settings.seed, 1000 + chain). Retains post-burn-in sweeps at the
/// thinning stride. `progress` (optional) is called once per chain on completion.
PosteriorDraws run_chains(const PreparedModelInput& input, const SamplerSettings& settings,
                          const std::function<void(int)>& progress = {});

}  // namespace rw2cf

#endif
