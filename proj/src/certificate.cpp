#include "velaid/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace velaid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt8 = std::sqrt(8.0);

struct Alphas {
  double a1, a2, a3, a4;
};

Alphas alphas(const TrajectoryConstants& tc, const GainConfig& g) {
  const double lmax = tc.lambda_max_Abar;
  return {2.0 * tc.c_b * tc.c_b + 8.0 * lmax * g.k_b, 4.0 * lmax * tc.c_b * (4.0 + kSqrt2),
          2.0 * g.rho2 * tc.c2 * g.k_b, g.rho2 * tc.c2 * tc.c_b * (4.0 + kSqrt2)};
}

// Smallest leading principal minor, the positive-definiteness test used in
// the report (eigenvalues are left to independent checks).
double min_leading_minor(const Mat3& m) {
  const double d1 = m(0, 0);
  const double d2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return std::min({d1, d2, m.determinant()});
}

double min_leading_minor(const Eigen::Matrix2d& m) {
  return std::min(m(0, 0), m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

double safe_div(double num, double den) { return den > 0.0 ? num / den : kInf; }

// Time bound to enter |r~_a| <= b starting from r0 with gain k.
double entry_time(double k, double r0, double b, double c_a) {
  return std::log((r0 - c_a / k) / (b - c_a / k)) / k;
}

double solve_kv_star(double c_a, double k_R, double B_a, double r0, double t_R, double& t_a) {
  const double b = B_a / k_R;
  const double floor_k = c_a * k_R / B_a;
  if (r0 <= b) {
    t_a = 0.0;
    return floor_k;
  }
  if (!(t_R > 0.0)) {
    t_a = kInf;
    return kInf;
  }
  double lo = floor_k;
  double hi = std::max(2.0 * floor_k, 1.0);
  while (entry_time(hi, r0, b, c_a) > t_R) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      t_a = kInf;
      return kInf;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid > floor_k && entry_time(mid, r0, b, c_a) <= t_R) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  t_a = entry_time(hi, r0, b, c_a);
  return hi;
}

}  // namespace

LyapunovMatrices lyapunov_matrices(const TrajectoryConstants& tc, const GainConfig& g, double eps_R, double mu) {
  const Alphas a = alphas(tc, g);
  const double lam = tc.lambda_min_Abar * (1.0 - eps_R * eps_R);
  const double c_omega = tc.c4;
  LyapunovMatrices m;
  const double bias = mu * g.k_R / (2.0 * g.k_b);
  m.p1 << 1.0, -mu, 0.0, -mu, bias, 0.0, 0.0, 0.0, 0.5;
  m.p2 << 1.0, mu, 0.0, mu, bias, 0.0, 0.0, 0.0, 0.5;
  const double off12 = -(0.5 + c_omega * mu);
  m.p12 << g.k_R * (2.0 * lam - mu * a.a2) - mu * a.a1, off12, off12, 0.5 * mu;
  const double off13 = -0.5 * (g.k_R * g.rho2 * tc.c2 + kSqrt8 * tc.c3 + mu * (a.a3 + g.k_R * a.a4));
  m.p13 << 2.0 * g.k_R * lam, off13, off13, 0.5 * g.k_v;
  m.p23 << 0.5 * mu, -0.5 * tc.c2, -0.5 * tc.c2, 0.5 * g.k_v;
  return m;
}

Certificate evaluate_certificate(const TrajectoryConstants& tc, const GainConfig& g, const CertificateInputs& in) {
  if (!(in.eps_R > 0.0 && in.eps_R < 1.0)) {
    throw std::invalid_argument("certificate: eps_R must lie in (0, 1)");
  }
  Certificate c;
  c.epsilon_R = in.eps_R;
  c.epsilon_a = in.eps_a;
  c.B_a = in.B_a;
  c.c_omega = tc.c4;

  const Alphas a = alphas(tc, g);
  c.alpha1 = a.a1;
  c.alpha2 = a.a2;
  c.alpha3 = a.a3;
  c.alpha4 = a.a4;

  const double one_minus = 1.0 - in.eps_R * in.eps_R;
  const double lmin = tc.lambda_min_Abar;
  const double lam = lmin > 0.0 ? lmin * one_minus : 0.0;
  c.mu_max = safe_div(lam, a.a2);
  if (lam <= 0.0) c.mu_max = 0.0;
  c.mu = in.mu > 0.0 ? in.mu : 0.5 * c.mu_max;
  const double mu = c.mu;

  auto add = [&c](std::string name, double value, double threshold) {
    c.conditions.push_back({std::move(name), value, threshold, value > threshold});
  };

  add("assumption_lambda_min_Abar", lmin, 0.0);
  add("mu_below_bound", c.mu_max, mu);

  // Attitude-ball invariance.
  const double kr_inv = safe_div(tc.c_b + g.rho2 * tc.c2 * in.B_a, 4.0 * lam * in.eps_R * in.eps_R);
  // P1 > 0.
  const double kr_p1 = 2.0 * mu * g.k_b;
  // P12 > 0, closed-form sufficient bound and the exact minor threshold.
  const double kr_p12 =
      safe_div(2.0 * a.a1 * mu * mu + std::pow(1.0 + 2.0 * c.c_omega * mu, 2), 2.0 * mu * lam);
  const double kr_p12_minor =
      safe_div(2.0 * std::pow(0.5 + c.c_omega * mu, 2) / mu + mu * a.a1, 2.0 * lam - mu * a.a2);
  c.k_R_min = std::max({kr_inv, kr_p1, kr_p12, kr_p12_minor});
  add("k_R_attitude_ball", g.k_R, kr_inv);
  add("k_R_P1", g.k_R, kr_p1);
  add("k_R_P12", g.k_R, kr_p12);
  add("k_R_P12_minor", g.k_R, kr_p12_minor);

  const double kv_budget = tc.c_a / (in.r_a0_norm + in.eps_a);
  c.t_R_lower = (in.eps_R * in.eps_R - in.r_dist0 * in.r_dist0) /
                (tc.c_b + g.k_R * g.rho2 * tc.c2 * (in.r_a0_norm + in.eps_a));
  c.k_v_star = solve_kv_star(tc.c_a, g.k_R, in.B_a, in.r_a0_norm, c.t_R_lower, c.t_a_upper);
  const double kv_p23 = safe_div(tc.c1 * tc.c1, mu);
  const double kv_p23_minor = safe_div(tc.c2 * tc.c2, mu);
  const double kv_p13 = safe_div(
      2.0 * std::pow(0.5 * g.k_R * g.rho2 * tc.c1 + kSqrt2 * tc.c2 + 0.5 * mu * (a.a3 + g.k_R * a.a4), 2),
      g.k_R * lam);
  const double kv_p13_minor = safe_div(
      std::pow(g.k_R * g.rho2 * tc.c2 + kSqrt8 * tc.c3 + mu * (a.a3 + g.k_R * a.a4), 2), 4.0 * g.k_R * lam);
  c.k_v_min = std::max({kv_budget, c.k_v_star, kv_p23, kv_p23_minor, kv_p13, kv_p13_minor});
  add("k_v_accel_budget", g.k_v, kv_budget);
  c.conditions.push_back({"k_v_star", g.k_v, c.k_v_star, g.k_v >= c.k_v_star});
  add("k_v_P23", g.k_v, kv_p23);
  add("k_v_P23_minor", g.k_v, kv_p23_minor);
  add("k_v_P13", g.k_v, kv_p13);
  add("k_v_P13_minor", g.k_v, kv_p13_minor);

  const LyapunovMatrices m = lyapunov_matrices(tc, g, in.eps_R, mu);
  add("P1_positive_definite", min_leading_minor(m.p1), 0.0);
  add("P2_positive_definite", min_leading_minor(m.p2), 0.0);
  add("P12_positive_definite", min_leading_minor(m.p12), 0.0);
  add("P13_positive_definite", min_leading_minor(m.p13), 0.0);
  add("P23_positive_definite", min_leading_minor(m.p23), 0.0);

  c.unbounded = !std::isfinite(c.k_R_min) || !std::isfinite(c.k_v_min);
  c.satisfied = std::all_of(c.conditions.begin(), c.conditions.end(),
                            [](const CertificateCondition& k) { return k.satisfied; });
  return c;
}

}  // namespace velaid
