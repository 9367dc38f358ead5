#include "velaid/constants.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace velaid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PointValues {
  double obs_ratio;
  double ra_norm;
  double ra_rate_norm;
  double omega_norm;
  double lambda_min;
  double lambda_max;
};

PointValues evaluate_point(const TrajectorySpec& spec, const Vec3& r_m, double t, const ConstantsOptions& opt) {
  const Vec3 ra = apparent_accel(spec, t);
  PointValues p;
  p.ra_norm = ra.norm();
  p.obs_ratio = p.ra_norm > 0.0 ? r_m.cross(ra).norm() / (r_m.norm() * p.ra_norm) : 0.0;
  p.ra_rate_norm = apparent_accel_rate(spec, t).norm();
  p.omega_norm = spec.omega(t).norm();
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(abar(r_m, ra, opt.rho1, opt.rho2), Eigen::EigenvaluesOnly);
  p.lambda_min = eig.eigenvalues()(0);
  p.lambda_max = eig.eigenvalues()(2);
  return p;
}

void validate(const Vec3& r_m, double c5, const ConstantsOptions& opt) {
  if (!(opt.t_end > 0.0) || !(opt.grid_dt > 0.0) || opt.grid_dt > 1e-3 * opt.t_end) {
    throw std::invalid_argument("extract_constants: need 0 < grid_dt <= 1e-3 * t_end");
  }
  if (!(r_m.norm() > 0.0)) throw std::invalid_argument("extract_constants: r_m must be nonzero");
  if (!(c5 >= 0.0) || !(opt.eps_proj >= 0.0)) {
    throw std::invalid_argument("extract_constants: c5 and eps_proj must be nonnegative");
  }
}

// Shared by both kernels so they differ only in how the reductions run.
TrajectoryConstants finish(double c0, double c1, double c2, double c3, double c4, double lmin, double lmax,
                           double t_obs, double t_ff, double c5, const ConstantsOptions& opt) {
  TrajectoryConstants tc;
  tc.c0 = c0;
  tc.c1 = c1;
  tc.c2 = c2;
  tc.c3 = c3;
  tc.c4 = c4;
  tc.c5 = c5;
  tc.c_b = 2.0 * c5 + opt.eps_proj;
  tc.c_a = std::sqrt(8.0) * c3 + c2 * tc.c_b;
  tc.lambda_min_Abar = lmin;
  tc.lambda_max_Abar = lmax;
  if (t_obs < kInf) {
    tc.violations.push_back({AssumptionViolation::Kind::kObservability, t_obs,
                             "observability margin vanishes: r_m and r_a collinear at t = " + std::to_string(t_obs)});
  }
  if (t_ff < kInf) {
    tc.violations.push_back({AssumptionViolation::Kind::kFreeFall, t_ff,
                             "apparent acceleration vanishes (free fall) at t = " + std::to_string(t_ff)});
  }
  return tc;
}

}  // namespace

Mat3 abar(const Vec3& r_m, const Vec3& r_a, double rho1, double rho2) {
  const Mat3 a = rho1 * r_m * r_m.transpose() + rho2 * r_a * r_a.transpose();
  return 0.5 * (a.trace() * Mat3::Identity() - a);
}

std::vector<double> constants_grid(double grid_dt, double t_end) {
  const auto n = static_cast<long>(std::floor(t_end / grid_dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * grid_dt);
  if (grid.back() < t_end) grid.push_back(t_end);
  return grid;
}

TrajectoryConstants extract_constants_serial(const TrajectorySpec& spec, const Vec3& r_m, double c5,
                                             const ConstantsOptions& opt) {
  validate(r_m, c5, opt);
  const std::vector<double> grid = constants_grid(opt.grid_dt, opt.t_end);
  double c0 = kInf, c1 = kInf, c2 = 0.0, c3 = 0.0, c4 = 0.0, lmin = kInf, lmax = -kInf;
  double t_obs = kInf, t_ff = kInf;
  for (const double t : grid) {
    const PointValues p = evaluate_point(spec, r_m, t, opt);
    c0 = std::min(c0, p.obs_ratio);
    c1 = std::min(c1, p.ra_norm);
    c2 = std::max(c2, p.ra_norm);
    c3 = std::max(c3, p.ra_rate_norm);
    c4 = std::max(c4, p.omega_norm);
    lmin = std::min(lmin, p.lambda_min);
    lmax = std::max(lmax, p.lambda_max);
    if (p.obs_ratio <= kMarginTol) t_obs = std::min(t_obs, t);
    if (p.ra_norm <= kMarginTol) t_ff = std::min(t_ff, t);
  }
  return finish(c0, c1, c2, c3, c4, lmin, lmax, t_obs, t_ff, c5, opt);
}

TrajectoryConstants extract_constants(const TrajectorySpec& spec, const Vec3& r_m, double c5,
                                      const ConstantsOptions& opt) {
  validate(r_m, c5, opt);
  const std::vector<double> grid = constants_grid(opt.grid_dt, opt.t_end);
  const auto n = static_cast<long>(grid.size());
  double c0 = kInf, c1 = kInf, c2 = 0.0, c3 = 0.0, c4 = 0.0, lmin = kInf, lmax = -kInf;
  double t_obs = kInf, t_ff = kInf;
#pragma omp parallel for schedule(static) reduction(min : c0, c1, lmin, t_obs, t_ff) \
    reduction(max : c2, c3, c4, lmax)
  for (long k = 0; k < n; ++k) {
    const double t = grid[static_cast<std::size_t>(k)];
    const PointValues p = evaluate_point(spec, r_m, t, opt);
    c0 = std::min(c0, p.obs_ratio);
    c1 = std::min(c1, p.ra_norm);
    c2 = std::max(c2, p.ra_norm);
    c3 = std::max(c3, p.ra_rate_norm);
    c4 = std::max(c4, p.omega_norm);
    lmin = std::min(lmin, p.lambda_min);
    lmax = std::max(lmax, p.lambda_max);
    if (p.obs_ratio <= kMarginTol) t_obs = std::min(t_obs, t);
    if (p.ra_norm <= kMarginTol) t_ff = std::min(t_ff, t);
  }
  return finish(c0, c1, c2, c3, c4, lmin, lmax, t_obs, t_ff, c5, opt);
}

}  // namespace velaid
