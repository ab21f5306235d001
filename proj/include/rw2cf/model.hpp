// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_MODEL_HPP
#define RW2CF_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rw2cf {

/// Model-family choices: which columns enter the linear predictor and the
/// prior hyperparameters.
struct ModelConfig {
  std::vector<std::string> covariate_names;
  bool use_lag12 = true;
  bool standardize_outcome = false;
  double prior_coef_variance = 1000.0;
  double prior_gamma_shape = 1.0;
  double prior_gamma_rate = 0.01;

  void validate() const;  // throws ValidationError

  /// Number of regression coefficients: intercept + covariates + lag.
  int coefficient_count() const {
    return 1 + static_cast<int>(covariate_names.size()) + (use_lag12 ? 1 : 0);
  }
};

struct SamplerSettings {
  int chains = 4;
  int iterations = 20000;
  int burn_in = 10000;
  int thin = 10;
  std::uint64_t seed = 0;

  void validate() const;  // throws ValidationError
  int retained_per_chain() const { return (iterations - burn_in) / thin; }
};

/// One point in parameter space; the Gibbs sweep mutates this in place.
struct ModelState {
  double beta0 = 0.0;
  Eigen::VectorXd beta;   // per covariate, standardized scale
  double gamma = 0.0;     // 12-month-lag coefficient
  Eigen::VectorXd u;      // latent trend, one entry per training month
  double tau = 1.0;       // observation precision 1/v
  double tau_e = 1.0;     // trend innovation precision 1/v_e

  bool all_finite() const;
};

}  // namespace rw2cf

#endif
