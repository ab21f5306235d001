// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/gibbs.hpp"

#include <cmath>
#include <numeric>

#include "rw2cf/errors.hpp"
#include "rw2cf/rw2.hpp"

namespace rw2cf {

namespace {

std::vector<int> masked_rows(const PreparedModelInput& input) {
  std::vector<int> rows;
  for (int t = 0; t < input.T; ++t) {
    if (input.likelihood_mask[static_cast<std::size_t>(t)]) rows.push_back(t);
  }
  return rows;
}

// Design matrix [1 | X | lag12] over the likelihood rows.
Eigen::MatrixXd build_design(const PreparedModelInput& input, const std::vector<int>& rows) {
  int k = static_cast<int>(input.covariate_names.size());
  int m = 1 + k + (input.has_lag ? 1 : 0);
  Eigen::MatrixXd Z(static_cast<int>(rows.size()), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int r = rows[i];
    Z(static_cast<int>(i), 0) = 1.0;
    for (int j = 0; j < k; ++j) Z(static_cast<int>(i), 1 + j) = input.X(r, j);
    if (input.has_lag) Z(static_cast<int>(i), 1 + k) = input.lag12[r];
  }
  return Z;
}

// Non-trend part of the mean at row t (0-based).
double fitted_nontrend(const PreparedModelInput& input, const ModelState& state, int t) {
  double f = state.beta0;
  for (int j = 0; j < state.beta.size(); ++j) f += input.X(t, j) * state.beta[j];
  if (input.has_lag) f += state.gamma * input.lag12[t];
  return f;
}

}  // namespace

CoefficientConditional coefficient_conditional(const PreparedModelInput& input,
                                               const ModelState& state) {
  std::vector<int> rows = masked_rows(input);
  Eigen::MatrixXd Z = build_design(input, rows);
  int m = static_cast<int>(Z.cols());
  Eigen::VectorXd resid(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    resid[static_cast<int>(i)] = input.y[rows[i]] - state.u[rows[i]];
  }
  CoefficientConditional out;
  out.precision = state.tau * (Z.transpose() * Z);
  out.precision += Eigen::MatrixXd::Identity(m, m) / input.prior_coef_variance;
  Eigen::LLT<Eigen::MatrixXd> llt(out.precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("coefficient conditional precision is not positive definite");
  }
  out.mean = llt.solve(state.tau * (Z.transpose() * resid));
  return out;
}

LatentSiteConditional latent_site_conditional(const PreparedModelInput& input,
                                              const ModelState& state, int t,
                                              double residual) {
  SiteConditional prior = rw2_conditional(state.u, t, 1.0 / state.tau_e);
  double tau_prior = 1.0 / prior.variance;
  bool in_window = input.likelihood_mask[static_cast<std::size_t>(t - 1)];
  double p = tau_prior + (in_window ? state.tau : 0.0);
  double mean = (tau_prior * prior.mean + (in_window ? state.tau * residual : 0.0)) / p;
  return {mean, 1.0 / p};
}

void draw_coefficients(const PreparedModelInput& input, ModelState& state, Rng& rng) {
  CoefficientConditional cond = coefficient_conditional(input, state);
  int m = static_cast<int>(cond.mean.size());
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) z[i] = rng.normal();
  Eigen::LLT<Eigen::MatrixXd> llt(cond.precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("coefficient conditional precision is not positive definite");
  }
  Eigen::VectorXd theta = cond.mean + llt.matrixU().solve(z);
  int k = static_cast<int>(input.covariate_names.size());
  state.beta0 = theta[0];
  state.beta = theta.segment(1, k);
  if (input.has_lag) state.gamma = theta[1 + k];
}

void draw_latent(const PreparedModelInput& input, ModelState& state, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(input.T));
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(order);
  for (int t : order) {
    double residual = 0.0;
    if (input.likelihood_mask[static_cast<std::size_t>(t - 1)]) {
      residual = input.y[t - 1] - fitted_nontrend(input, state, t - 1);
    }
    LatentSiteConditional cond = latent_site_conditional(input, state, t, residual);
    state.u[t - 1] = cond.mean + std::sqrt(cond.variance) * rng.normal();
  }
  double shift = state.u.mean();
  state.u.array() -= shift;
  state.beta0 += shift;
}

GammaParams tau_conditional(const PreparedModelInput& input, const ModelState& state) {
  double ss = 0.0;
  int n = 0;
  for (int t = 0; t < input.T; ++t) {
    if (!input.likelihood_mask[static_cast<std::size_t>(t)]) continue;
    double r = input.y[t] - fitted_nontrend(input, state, t) - state.u[t];
    ss += r * r;
    ++n;
  }
  return {input.prior_gamma_shape + 0.5 * n, input.prior_gamma_rate + 0.5 * ss};
}

GammaParams tau_e_conditional(const PreparedModelInput& input, const ModelState& state) {
  double ss = second_diff_sum_squares(state.u);
  return {input.prior_gamma_shape + 0.5 * (input.T - 2), input.prior_gamma_rate + 0.5 * ss};
}

void draw_precisions(const PreparedModelInput& input, ModelState& state, Rng& rng) {
  GammaParams t1 = tau_conditional(input, state);
  state.tau = rng.gamma(t1.shape, t1.rate);
  GammaParams t2 = tau_e_conditional(input, state);
  state.tau_e = rng.gamma(t2.shape, t2.rate);
}

void gibbs_sweep(const PreparedModelInput& input, ModelState& state, Rng& rng) {
  draw_coefficients(input, state, rng);
  draw_latent(input, state, rng);
  draw_precisions(input, state, rng);
}

ModelState initial_state(const PreparedModelInput& input, Rng& rng) {
  int k = static_cast<int>(input.covariate_names.size());
  ModelState state;
  state.beta = Eigen::VectorXd::Zero(k);
  state.u = Eigen::VectorXd::Zero(input.T);

  double level = 0.0, spread = 1.0;
  std::vector<double> window;
  for (int t = 0; t < input.T; ++t) {
    if (input.likelihood_mask[static_cast<std::size_t>(t)]) window.push_back(input.y[t]);
  }
  if (window.size() >= 2) {
    double sum = 0.0;
    for (double v : window) sum += v;
    level = sum / static_cast<double>(window.size());
    double ss = 0.0;
    for (double v : window) ss += (v - level) * (v - level);
    double var = ss / static_cast<double>(window.size() - 1);
    if (var > 1e-12) spread = std::sqrt(var);
  }

  // Overdispersed starts so split R-hat can flag non-convergence.
  state.beta0 = level + 0.5 * spread * rng.normal();
  for (int j = 0; j < k; ++j) state.beta[j] = 0.5 * rng.normal();
  if (input.has_lag) state.gamma = 0.25 * rng.normal();
  state.tau = std::exp(0.7 * rng.normal()) / (spread * spread);
  state.tau_e = 20.0 * std::exp(0.7 * rng.normal()) / (spread * spread);
  return state;
}

PosteriorDraws run_chains(const PreparedModelInput& input, const SamplerSettings& settings,
                          const std::function<void(int)>& progress) {
  settings.validate();
  if (input.T < 5) throw ValidationError("the latent trend needs at least 5 months");

  int retained = settings.retained_per_chain();
  int total = retained * settings.chains;
  int k = static_cast<int>(input.covariate_names.size());

  PosteriorDraws draws;
  draws.coef_names = input.covariate_names;
  draws.T = input.T;
  draws.has_gamma = input.has_lag;
  draws.chain_id.resize(static_cast<std::size_t>(total));
  draws.iteration.resize(static_cast<std::size_t>(total));
  draws.beta0.resize(static_cast<std::size_t>(total));
  draws.gamma.resize(static_cast<std::size_t>(total));
  draws.tau.resize(static_cast<std::size_t>(total));
  draws.tau_e.resize(static_cast<std::size_t>(total));
  draws.beta.resize(total, k);
  draws.u.resize(total, input.T);

  for (int chain = 1; chain <= settings.chains; ++chain) {
    Rng rng(mix_seed(settings.seed, 1000 + static_cast<std::uint64_t>(chain)));
    ModelState state = initial_state(input, rng);
    int row = (chain - 1) * retained;
    for (int iter = 1; iter <= settings.iterations; ++iter) {
      gibbs_sweep(input, state, rng);
      if (!state.all_finite()) {
        throw NumericError("non-finite sampler state in chain " + std::to_string(chain) +
                           " at sweep " + std::to_string(iter));
      }
      if (iter > settings.burn_in && (iter - settings.burn_in) % settings.thin == 0) {
        auto r = static_cast<std::size_t>(row);
        draws.chain_id[r] = chain;
        draws.iteration[r] = iter;
        draws.beta0[r] = state.beta0;
        draws.gamma[r] = input.has_lag ? state.gamma : 0.0;
        draws.tau[r] = state.tau;
        draws.tau_e[r] = state.tau_e;
        draws.beta.row(row) = state.beta.transpose();
        draws.u.row(row) = state.u.transpose();
        ++row;
      }
    }
    if (progress) progress(chain);
  }
  return draws;
}

}  // namespace rw2cf
