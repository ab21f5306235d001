// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_RW2_HPP
#define RW2CF_RW2_HPP

#include <Eigen/Dense>

#include "rw2cf/rng.hpp"

namespace rw2cf {

/// Second-difference operator: (T-2) x T, rows (1, -2, 1).
Eigen::MatrixXd second_difference_operator(int T);

/// Intrinsic second-order random-walk penalty D^T D (T x T, rank T-2).
/// Its null space is spanned by the constant and linear ramp vectors.
Eigen::MatrixXd rw2_penalty(int T);

/// Full conditional of trend site t (1-based) given the rest, under the
/// improper prior with innovation variance v_e. Equivalent to the Gaussian
/// conditional of precision (1/v_e) * rw2_penalty(T); the five boundary and
/// interior cases are coded explicitly.
struct SiteConditional {
  double mean;
  double variance;
};
SiteConditional rw2_conditional(const Eigen::VectorXd& u, int t, double v_e);

/// Log-kernel of the improper joint density:
/// -(1/(2 v_e)) * sum_{t=3}^{T} (u_t - 2 u_{t-1} + u_{t-2})^2.
double rw2_logpenalty(const Eigen::VectorXd& u, double v_e);

double second_diff_sum_squares(const Eigen::VectorXd& u);

/// Extends the trend H steps past the training window:
/// u_{T+h} ~ Normal(2 u_{T+h-1} - u_{T+h-2}, v_e) sequentially.
Eigen::VectorXd rw2_forward_simulate(double u_prev, double u_last, int horizon,
                                     double v_e, Rng& rng);

}  // namespace rw2cf

#endif
