#pragma once

#include <string>
#include <vector>

#include "velaid/rigid_body.hpp"

namespace velaid {

/// Grid quantities at or below this value count as a vanished margin.
inline constexpr double kMarginTol = 1e-9;

struct AssumptionViolation {
  enum class Kind {
    kObservability,  ///< r_m and r_a (nearly) collinear
    kFreeFall,       ///< |r_a| vanishes
  };
  Kind kind;
  double t = 0.0;  ///< earliest grid time at which it occurs
  std::string message;
};

/// Bounds of a trajectory sampled on a grid.
struct TrajectoryConstants {
  double c0 = 0.0;  ///< min |r_m x r_a| / (|r_m| |r_a|)
  double c1 = 0.0;  ///< min |r_a|
  double c2 = 0.0;  ///< max |r_a|
  double c3 = 0.0;  ///< max |d r_a / dt|
  double c4 = 0.0;  ///< max |omega|
  double c5 = 0.0;  ///< bias norm bound (given)
  double c_a = 0.0; ///< sqrt(8) c3 + c2 c_b
  double c_b = 0.0; ///< bound on the bias error, 2 c5 + eps_proj
  double lambda_min_Abar = 0.0;
  double lambda_max_Abar = 0.0;
  std::vector<AssumptionViolation> violations;

  bool assumptions_hold() const { return violations.empty(); }
};

struct ConstantsOptions {
  double grid_dt = 1e-3;
  double t_end = 60.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double eps_proj = 0.0;  ///< projection boundary layer, widens c_b
};

/// Abar = (tr(A) I - A) / 2 with A = rho1 r_m r_m^T + rho2 r_a r_a^T.
Mat3 abar(const Vec3& r_m, const Vec3& r_a, double rho1, double rho2);

/// Grid t_k = k grid_dt for k = 0..floor(t_end / grid_dt), plus t_end.
std::vector<double> constants_grid(double grid_dt, double t_end);

/// OpenMP min/max reductions over the grid.
/// Throws std::invalid_argument unless 0 < grid_dt <= 1e-3 t_end.
TrajectoryConstants extract_constants(const TrajectorySpec& spec, const Vec3& r_m, double c5,
                                      const ConstantsOptions& opt);

/// Single-threaded reference for extract_constants; results are identical.
TrajectoryConstants extract_constants_serial(const TrajectorySpec& spec, const Vec3& r_m, double c5,
                                             const ConstantsOptions& opt);

}  // namespace velaid
