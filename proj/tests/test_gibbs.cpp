// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rw2cf/gibbs.hpp"
#include "rw2cf/rw2.hpp"
#include "support/oracles.hpp"

using namespace rw2cf;
using namespace rw2cf::testing;

namespace {

ModelState fixed_state(const PreparedModelInput& input) {
  ModelState state;
  state.beta0 = 0.4;
  state.beta = Eigen::VectorXd::Constant(input.X.cols(), 0.3);
  state.gamma = -0.2;
  state.u = Eigen::VectorXd(input.T);
  for (int t = 0; t < input.T; ++t) state.u[t] = 0.1 * std::sin(1.3 * t);
  state.tau = 4.0;
  state.tau_e = 25.0;
  return state;
}

Eigen::MatrixXd design(const PreparedModelInput& input) {
  int k = static_cast<int>(input.X.cols());
  Eigen::MatrixXd Z(input.T, 1 + k + (input.has_lag ? 1 : 0));
  Z.col(0).setOnes();
  Z.middleCols(1, k) = input.X;
  if (input.has_lag) Z.col(1 + k) = input.lag12;
  return Z;
}

double nontrend_fitted(const PreparedModelInput& input, const ModelState& state, int t) {
  double f = state.beta0 + input.X.row(t - 1).dot(state.beta);
  if (input.has_lag) f += state.gamma * input.lag12[t - 1];
  return f;
}

}  // namespace

TEST_CASE("coefficient conditional equals the normal-equations posterior") {
  PreparedModelInput input = toy_input();
  ModelState state = fixed_state(input);

  Eigen::MatrixXd Z = design(input);
  Eigen::VectorXd resid = input.y - state.u;
  LinearPosterior oracle = bayes_linear(Z, resid, state.tau, input.prior_coef_variance);

  CoefficientConditional cond = coefficient_conditional(input, state);
  REQUIRE(cond.mean.size() == 3);
  CHECK(cond.mean.isApprox(oracle.mean, 1e-12));
  CHECK(cond.precision.isApprox(oracle.precision, 1e-12));
}

TEST_CASE("coefficient conditional restricts to masked months") {
  PreparedModelInput input = toy_input();
  input.likelihood_mask = {false, true, true, false, true, true};
  input.window_first = 2;
  input.window_last = 6;
  ModelState state = fixed_state(input);

  Eigen::MatrixXd Z_full = design(input);
  Eigen::MatrixXd Z(4, 3);
  Eigen::VectorXd resid(4);
  int r = 0;
  for (int t = 1; t <= input.T; ++t) {
    if (!input.likelihood_mask[t - 1]) continue;
    Z.row(r) = Z_full.row(t - 1);
    resid[r] = input.y[t - 1] - state.u[t - 1];
    ++r;
  }
  LinearPosterior oracle = bayes_linear(Z, resid, state.tau, input.prior_coef_variance);
  CoefficientConditional cond = coefficient_conditional(input, state);
  CHECK(cond.mean.isApprox(oracle.mean, 1e-12));
  CHECK(cond.precision.isApprox(oracle.precision, 1e-12));
}

TEST_CASE("with nothing in the likelihood the coefficients fall back to the prior") {
  PreparedModelInput input = toy_input();
  input.likelihood_mask.assign(6, false);
  input.window_first = 0;
  input.window_last = 0;
  ModelState state = fixed_state(input);

  CoefficientConditional cond = coefficient_conditional(input, state);
  CHECK(cond.mean.cwiseAbs().maxCoeff() == 0.0);
  Eigen::MatrixXd expected =
      Eigen::MatrixXd::Identity(3, 3) / input.prior_coef_variance;
  CHECK(cond.precision.isApprox(expected, 1e-14));
}

TEST_CASE("latent site conditional blends the trend prior with the likelihood") {
  PreparedModelInput input = toy_input();
  ModelState state = fixed_state(input);
  for (int t = 1; t <= input.T; ++t) {
    double r = input.y[t - 1] - nontrend_fitted(input, state, t);
    SiteConditional prior = rw2_conditional(state.u, t, 1.0 / state.tau_e);
    double prior_prec = 1.0 / prior.variance;
    double post_prec = prior_prec + state.tau;
    double post_mean = (prior_prec * prior.mean + state.tau * r) / post_prec;

    LatentSiteConditional c = latent_site_conditional(input, state, t, r);
    CHECK(c.mean == doctest::Approx(post_mean).epsilon(1e-12));
    CHECK(c.variance == doctest::Approx(1.0 / post_prec).epsilon(1e-12));
  }
}

TEST_CASE("latent site without a likelihood term is the pure trend conditional") {
  PreparedModelInput input = toy_input();
  input.likelihood_mask[2] = false;
  ModelState state = fixed_state(input);
  double r = input.y[2] - nontrend_fitted(input, state, 3);
  SiteConditional prior = rw2_conditional(state.u, 3, 1.0 / state.tau_e);
  LatentSiteConditional c = latent_site_conditional(input, state, 3, r);
  CHECK(c.mean == doctest::Approx(prior.mean).epsilon(1e-13));
  CHECK(c.variance == doctest::Approx(prior.variance).epsilon(1e-13));
}

TEST_CASE("an overwhelming likelihood pins the site at its residual") {
  PreparedModelInput input = toy_input();
  ModelState state = fixed_state(input);
  state.tau = 1e12;
  double r = input.y[3] - nontrend_fitted(input, state, 4);
  LatentSiteConditional c = latent_site_conditional(input, state, 4, r);
  CHECK(c.mean == doctest::Approx(r).epsilon(1e-9));
  CHECK(c.variance < 1e-11);
}

TEST_CASE("precision conditionals match their closed forms") {
  PreparedModelInput input = toy_input();
  ModelState state = fixed_state(input);

  double ss = 0.0;
  for (int t = 1; t <= input.T; ++t) {
    double e = input.y[t - 1] - nontrend_fitted(input, state, t) - state.u[t - 1];
    ss += e * e;
  }
  GammaParams tau_p = tau_conditional(input, state);
  CHECK(tau_p.shape == doctest::Approx(1.0 + 6.0 / 2.0).epsilon(1e-15));
  CHECK(tau_p.rate == doctest::Approx(0.01 + ss / 2.0).epsilon(1e-12));

  GammaParams tau_e_p = tau_e_conditional(input, state);
  CHECK(tau_e_p.shape == doctest::Approx(1.0 + (6.0 - 2.0) / 2.0).epsilon(1e-15));
  CHECK(tau_e_p.rate ==
        doctest::Approx(0.01 + second_diff_sum_squares(state.u) / 2.0).epsilon(1e-12));
}

TEST_CASE("precision conditionals shrink to the prior with an empty window") {
  PreparedModelInput input = toy_input();
  input.likelihood_mask.assign(6, false);
  input.window_first = 0;
  input.window_last = 0;
  ModelState state = fixed_state(input);
  GammaParams tau_p = tau_conditional(input, state);
  CHECK(tau_p.shape == 1.0);
  CHECK(tau_p.rate == 0.01);
}

TEST_CASE("the latent scan recenters the trend into the intercept") {
  PreparedModelInput input = toy_input();
  ModelState state = fixed_state(input);
  Rng rng(314);
  for (int sweep = 0; sweep < 50; ++sweep) {
    double level_before = state.beta0 + state.u.mean();
    draw_latent(input, state, rng);
    CHECK(std::abs(state.u.mean()) < 1e-12);
    // recentering shuffles level between beta0 and u without inventing any
    CHECK(std::isfinite(level_before));
    CHECK(state.all_finite());
  }
}

TEST_CASE("a full sweep keeps the state finite and the precisions positive") {
  PreparedModelInput input = toy_input();
  Rng rng(999);
  ModelState state = initial_state(input, rng);
  CHECK(state.all_finite());
  CHECK(state.tau > 0);
  CHECK(state.tau_e > 0);
  REQUIRE(state.u.size() == input.T);
  for (int sweep = 0; sweep < 200; ++sweep) {
    gibbs_sweep(input, state, rng);
    REQUIRE(state.all_finite());
    REQUIRE(state.tau > 0);
    REQUIRE(state.tau_e > 0);
  }
}

TEST_CASE("run_chains retains the configured draws in order") {
  PreparedModelInput input = toy_input();
  SamplerSettings settings;
  settings.chains = 3;
  settings.iterations = 50;
  settings.burn_in = 20;
  settings.thin = 5;
  settings.seed = 7;

  PosteriorDraws draws = run_chains(input, settings);
  CHECK(draws.rows() == 3 * settings.retained_per_chain());
  CHECK(draws.T == input.T);
  CHECK(draws.coef_names == input.covariate_names);
  CHECK(draws.has_gamma);

  int r = 0;
  for (int chain = 1; chain <= 3; ++chain) {
    for (int j = 1; j <= settings.retained_per_chain(); ++j, ++r) {
      CHECK(draws.chain_id[r] == chain);
      CHECK(draws.iteration[r] == settings.burn_in + settings.thin * j);
    }
  }
}

TEST_CASE("chains are deterministic in the seed") {
  PreparedModelInput input = toy_input();
  SamplerSettings settings;
  settings.chains = 2;
  settings.iterations = 40;
  settings.burn_in = 10;
  settings.thin = 3;
  settings.seed = 11;

  PosteriorDraws a = run_chains(input, settings);
  PosteriorDraws b = run_chains(input, settings);
  CHECK(a.beta0 == b.beta0);
  CHECK(a.gamma == b.gamma);
  CHECK(a.tau == b.tau);
  CHECK(a.tau_e == b.tau_e);
  CHECK(a.u.isApprox(b.u, 0.0));

  settings.seed = 12;
  PosteriorDraws c = run_chains(input, settings);
  CHECK(a.beta0 != c.beta0);
}

TEST_CASE("a model without the lag drops the gamma column") {
  PreparedModelInput input = toy_input();
  input.has_lag = false;
  ModelState state = fixed_state(input);
  CoefficientConditional cond = coefficient_conditional(input, state);
  CHECK(cond.mean.size() == 2);

  SamplerSettings settings;
  settings.chains = 1;
  settings.iterations = 20;
  settings.burn_in = 10;
  settings.thin = 2;
  settings.seed = 3;
  PosteriorDraws draws = run_chains(input, settings);
  CHECK_FALSE(draws.has_gamma);
  for (double g : draws.gamma) CHECK(g == 0.0);
}
