#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "support.hpp"
#include "velaid/certificate.hpp"

using namespace velaid;

namespace {

TrajectoryConstants reference_constants() {
  ConstantsOptions o;
  o.grid_dt = 1e-3;
  o.t_end = 60.0;
  o.eps_proj = 0.05;
  return extract_constants(reference_trajectory(), Vec3(0.18, 0.0, 0.54), 0.3, o);
}

CertificateInputs inside_ball() {
  CertificateInputs in;
  in.eps_R = 0.5;
  in.r_a0_norm = 2.0;
  in.r_dist0 = 0.2;
  return in;
}

const CertificateCondition& find(const Certificate& c, const std::string& name) {
  for (const auto& k : c.conditions) {
    if (k.name == name) return k;
  }
  FAIL("missing condition " << name);
  return c.conditions.front();
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0);
}

// Gains 1% above the reported bounds; k_v_min depends on k_R so it is
// re-read after k_R moves.
GainConfig gains_above_bounds(const TrajectoryConstants& tc, const CertificateInputs& in) {
  GainConfig g;
  g.k_R = 1.01 * evaluate_certificate(tc, g, in).k_R_min;
  g.k_v = 1.01 * evaluate_certificate(tc, g, in).k_v_min;
  return g;
}

}  // namespace

TEST_CASE("reference gains: a report is produced and the conditions are conservative") {
  const TrajectoryConstants tc = reference_constants();
  const Certificate c = evaluate_certificate(tc, GainConfig{}, inside_ball());
  CHECK_FALSE(c.satisfied);
  CHECK_FALSE(c.unbounded);
  CHECK(c.k_R_min > 2.0);
  CHECK(c.conditions.size() >= 17);
  CHECK(find(c, "assumption_lambda_min_Abar").satisfied);
  CHECK(find(c, "mu_below_bound").satisfied);
  CHECK(c.mu == doctest::Approx(0.5 * c.mu_max));
  CHECK(c.mu_max == doctest::Approx(tc.lambda_min_Abar * 0.75 / c.alpha2));
  CHECK(c.c_omega == tc.c4);
}

TEST_CASE("derived constants alpha1..alpha4") {
  const TrajectoryConstants tc = reference_constants();
  GainConfig g;
  g.k_b = 2.5;
  g.rho2 = 1.5;
  const Certificate c = evaluate_certificate(tc, g, inside_ball());
  const double lmax = tc.lambda_max_Abar;
  CHECK(c.alpha1 == doctest::Approx(2 * tc.c_b * tc.c_b + 8 * lmax * g.k_b));
  CHECK(c.alpha2 == doctest::Approx(4 * lmax * tc.c_b * (4 + std::sqrt(2.0))));
  CHECK(c.alpha3 == doctest::Approx(2 * g.rho2 * tc.c2 * g.k_b));
  CHECK(c.alpha4 == doctest::Approx(g.rho2 * tc.c2 * tc.c_b * (4 + std::sqrt(2.0))));
}

TEST_CASE("gains above the reported bounds satisfy every condition") {
  const TrajectoryConstants tc = reference_constants();
  const CertificateInputs in = inside_ball();
  const GainConfig g = gains_above_bounds(tc, in);
  const Certificate c = evaluate_certificate(tc, g, in);
  for (const auto& k : c.conditions) {
    INFO(k.name << " value " << k.value << " threshold " << k.threshold);
    CHECK(k.satisfied);
  }
  CHECK(c.satisfied);
  const LyapunovMatrices m = lyapunov_matrices(tc, g, in.eps_R, c.mu);
  CHECK(min_eig(m.p1) > 0.0);
  CHECK(min_eig(m.p2) > 0.0);
  CHECK(min_eig(m.p12) > 0.0);
  CHECK(min_eig(m.p13) > 0.0);
  CHECK(min_eig(m.p23) > 0.0);
}

TEST_CASE("k_v_star brings the acceleration error inside B_a / k_R before the attitude can leave the ball") {
  const TrajectoryConstants tc = reference_constants();
  const CertificateInputs in = inside_ball();
  const Certificate c = evaluate_certificate(tc, gains_above_bounds(tc, in), in);
  CHECK(std::isfinite(c.k_v_star));
  CHECK(c.t_R_lower > 0.0);
  CHECK(c.t_a_upper <= c.t_R_lower * (1 + 1e-9));
}

TEST_CASE("eps_R -> 1 drives k_R_min to infinity") {
  const TrajectoryConstants tc = reference_constants();
  double prev = 0.0;
  for (double eps : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
    CertificateInputs in = inside_ball();
    in.eps_R = eps;
    const Certificate c = evaluate_certificate(tc, GainConfig{}, in);
    CHECK(c.k_R_min > prev);
    prev = c.k_R_min;
  }
  CHECK(prev > 1e10);
  CertificateInputs in = inside_ball();
  in.eps_R = 1.0;
  CHECK_THROWS_AS(evaluate_certificate(tc, GainConfig{}, in), std::invalid_argument);
  in.eps_R = 0.0;
  CHECK_THROWS_AS(evaluate_certificate(tc, GainConfig{}, in), std::invalid_argument);
}

TEST_CASE("lost observability makes the requirement unbounded") {
  TrajectoryConstants tc = reference_constants();
  tc.lambda_min_Abar = 0.0;
  const Certificate c = evaluate_certificate(tc, GainConfig{}, inside_ball());
  CHECK(c.unbounded);
  CHECK_FALSE(c.satisfied);
  CHECK_FALSE(find(c, "assumption_lambda_min_Abar").satisfied);
}

TEST_CASE("starting outside the ball leaves no time budget") {
  const TrajectoryConstants tc = reference_constants();
  CertificateInputs in = inside_ball();
  in.r_dist0 = 0.8;
  const Certificate c = evaluate_certificate(tc, GainConfig{}, in);
  CHECK(c.t_R_lower < 0.0);
  CHECK(c.unbounded);
}

TEST_CASE("certificate evaluation is pure") {
  const TrajectoryConstants tc = reference_constants();
  const CertificateInputs in = inside_ball();
  const Certificate a = evaluate_certificate(tc, GainConfig{}, in);
  const Certificate b = evaluate_certificate(tc, GainConfig{}, in);
  REQUIRE(a.conditions.size() == b.conditions.size());
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    CHECK(a.conditions[i].name == b.conditions[i].name);
    CHECK(a.conditions[i].value == b.conditions[i].value);
    CHECK(a.conditions[i].threshold == b.conditions[i].threshold);
  }
  CHECK(a.k_R_min == b.k_R_min);
  CHECK(a.k_v_min == b.k_v_min);
}
