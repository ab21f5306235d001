// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_DRAWS_HPP
#define RW2CF_DRAWS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rw2cf {

/// Retained posterior draws, columnar. Row i is one retained sweep; rows are
/// ordered by chain then iteration.
struct PosteriorDraws {
  std::vector<std::string> coef_names;  // covariate names, beta columns
  int T = 0;
  std::vector<int> chain_id;
  std::vector<int> iteration;   // 1-based sweep index within the chain
  std::vector<double> beta0;
  Eigen::MatrixXd beta;         // rows x k
  std::vector<double> gamma;    // empty-model value 0 when the lag is off
  std::vector<double> tau;
  std::vector<double> tau_e;
  Eigen::MatrixXd u;            // rows x T

  bool has_gamma = true;
  int rows() const { return static_cast<int>(chain_id.size()); }
  int k() const { return static_cast<int>(coef_names.size()); }

  /// One scalar column by draws.csv header name ("beta0", "beta.<name>",
  /// "gamma", "tau", "tau_e", "u.<t>"). Throws ValidationError on unknown names.
  std::vector<double> column(const std::string& name) const;

  std::vector<std::string> column_names() const;
};

void write_draws_csv(const PosteriorDraws& draws, const std::string& path);
PosteriorDraws read_draws_csv(const std::string& path);

/// Type-7 quantile (linear interpolation of order statistics), p in [0, 1].
double quantile(std::vector<double> values, double p);

double mean_of(const std::vector<double>& values);
double sd_of(const std::vector<double>& values);  // sample sd, n-1

}  // namespace rw2cf

#endif
