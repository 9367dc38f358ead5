#pragma once

#include <string>
#include <vector>

#include "velaid/constants.hpp"
#include "velaid/observer.hpp"

namespace velaid {

/// Free parameters of the sufficient gain conditions for local-to-
/// semi-global exponential stability of the continuous observer.
struct CertificateInputs {
  double eps_R = 0.5;      ///< radius of the attitude-error ball, in (0, 1)
  double B_a = 1.0;        ///< target |r~_a| <= B_a / k_R after the transient
  double eps_a = 1.0;      ///< slack on |r~_a(0)|
  double mu = 0.0;         ///< Lyapunov cross-term weight; 0 selects half its upper bound
  double r_a0_norm = 0.0;  ///< |r~_a(0)|
  double r_dist0 = 0.0;    ///< |R~(0)|_I, in [0, eps_R)
};

/// One inequality `value > threshold` (or >= for the k_v* condition).
struct CertificateCondition {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
  double margin() const { return value - threshold; }
};

struct Certificate {
  double epsilon_R = 0.0;
  double epsilon_a = 0.0;
  double mu = 0.0;
  double B_a = 0.0;
  double mu_max = 0.0;  ///< lambda_min(Abar)(1 - eps_R^2) / alpha2
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0, alpha4 = 0.0;
  double c_omega = 0.0;  ///< bound on |omega| in the cross-term derivative (= c4)
  double k_R_min = 0.0;  ///< strict lower bound on k_R
  double k_v_min = 0.0;  ///< strict lower bound on k_v at the configured k_R
  double k_v_star = 0.0;
  double t_R_lower = 0.0;  ///< minimum time to leave the attitude ball
  double t_a_upper = 0.0;  ///< maximum time to enter |r~_a| <= B_a / k_R, at k_v_star
  bool unbounded = false;  ///< some requirement is infinite (eps_R -> 1, lost observability, ...)
  bool satisfied = false;  ///< every condition holds for the configured gains
  std::vector<CertificateCondition> conditions;
};

struct LyapunovMatrices {
  Mat3 p1;
  Mat3 p2;
  Eigen::Matrix2d p12;
  Eigen::Matrix2d p13;
  Eigen::Matrix2d p23;
};

/// Bounding matrices of the Lyapunov function and of its derivative for the
/// configured gains.
LyapunovMatrices lyapunov_matrices(const TrajectoryConstants& tc, const GainConfig& g, double eps_R, double mu);

/// Evaluates every gain condition. Always produces a report; invalid
/// eps_R (outside (0, 1)) throws std::invalid_argument.
Certificate evaluate_certificate(const TrajectoryConstants& tc, const GainConfig& g, const CertificateInputs& in);

}  // namespace velaid
