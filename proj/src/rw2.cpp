// Apache License, Version 2.0, refer to LICENSE.txt

#include "rw2cf/rw2.hpp"

#include "rw2cf/errors.hpp"

namespace rw2cf {

Eigen::MatrixXd second_difference_operator(int T) {
  if (T < 3) throw ValidationError("second differences need T >= 3");
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(T - 2, T);
  for (int r = 0; r < T - 2; ++r) {
    D(r, r) = 1.0;
    D(r, r + 1) = -2.0;
    D(r, r + 2) = 1.0;
  }
  return D;
}

Eigen::MatrixXd rw2_penalty(int T) {
  if (T < 5) throw ValidationError("the random-walk penalty needs T >= 5");
  Eigen::MatrixXd D = second_difference_operator(T);
  return D.transpose() * D;
}

SiteConditional rw2_conditional(const Eigen::VectorXd& u, int t, double v_e) {
  int T = static_cast<int>(u.size());
  if (T < 5) throw ValidationError("the trend conditional needs T >= 5");
  if (t < 1 || t > T) throw ValidationError("trend index out of range");
  if (!(v_e > 0)) throw NumericError("v_e must be > 0");
  auto a = [&](int i) { return u[i - 1]; };
  if (t == 1) return {2.0 * a(2) - a(3), v_e};
  if (t == 2) {
    return {(2.0 * a(1) + 4.0 * a(3) - a(4)) / 5.0, v_e / 5.0};
  }
  if (t == T - 1) {
    return {(2.0 * a(T) + 4.0 * a(T - 2) - a(T - 3)) / 5.0, v_e / 5.0};
  }
  if (t == T) return {2.0 * a(T - 1) - a(T - 2), v_e};
  return {(-a(t - 2) + 4.0 * a(t - 1) + 4.0 * a(t + 1) - a(t + 2)) / 6.0, v_e / 6.0};
}

double second_diff_sum_squares(const Eigen::VectorXd& u) {
  double ss = 0.0;
  for (int t = 2; t < u.size(); ++t) {
    double d = u[t] - 2.0 * u[t - 1] + u[t - 2];
    ss += d * d;
  }
  return ss;
}

double rw2_logpenalty(const Eigen::VectorXd& u, double v_e) {
  if (u.size() < 3) throw ValidationError("the log penalty needs T >= 3");
  if (!(v_e > 0)) throw NumericError("v_e must be > 0");
  return -second_diff_sum_squares(u) / (2.0 * v_e);
}

Eigen::VectorXd rw2_forward_simulate(double u_prev, double u_last, int horizon,
                                     double v_e, Rng& rng) {
  if (horizon < 1) throw ValidationError("forecast horizon must be >= 1");
  if (!(v_e >= 0)) throw NumericError("v_e must be >= 0");
  Eigen::VectorXd out(horizon);
  double sd = std::sqrt(v_e);
  double a = u_prev, b = u_last;
  for (int h = 0; h < horizon; ++h) {
    double next = 2.0 * b - a + sd * rng.normal();
    out[h] = next;
    a = b;
    b = next;
  }
  return out;
}

}  // namespace rw2cf
