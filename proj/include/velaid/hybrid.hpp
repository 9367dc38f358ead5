#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "velaid/observer.hpp"

namespace velaid {

/// Raised when the magnetometer and accelerometer directions are too
/// close to collinear for the attitude cost to be evaluated.
class ObservabilityLoss : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative collinearity guard: evaluation is refused when
/// |b_m x b_a| < kObservabilityGuard |b_m| |b_a|.
inline constexpr double kObservabilityGuard = 1e-6;

struct HybridConfig {
  double delta = 3.6;  ///< jump threshold on the attitude cost
  double alpha = 0.2;  ///< admissible perturbation of the cost by the acceleration error
  std::array<Vec3, 3> basis{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};

  /// Requires 0 < alpha < 2/7, 3 + 5 alpha / 2 < delta < 4 - alpha and an
  /// orthonormal basis (within kConstructTol). Throws std::invalid_argument.
  void validate() const;
};

struct HybridObserverState {
  ObserverState base;
  int j = 0;
  double t = 0.0;
};

struct JumpEvent {
  double t = 0.0;
  int j_before = 0;
  double phi_before = 0.0;
  double phi_after = 0.0;
  Vec3 axis = Vec3::Zero();
};

/// Measurable attitude cost
///   3 - r_m^T R_hat b_m / |b_m|^2
///     - (r_m x r_a)^T R_hat (b_m x b_a) / |b_m x b_a|^2
///     - (r_m x (r_m x r_a))^T R_hat (b_m x (b_m x b_a)) / |b_m x (b_m x b_a)|^2.
/// With exact measurements and the true r_a this equals tr(I - R R_hat^T).
/// Returns nullopt when the observability guard fails.
std::optional<double> try_phi0(const RotationMatrix& r_hat, const Vec3& b_m, const Vec3& b_a, const Vec3& r_a,
                               const Vec3& r_m);

/// As try_phi0; throws ObservabilityLoss on guard failure.
double phi0(const RotationMatrix& r_hat, const Vec3& b_m, const Vec3& b_a, const Vec3& r_a, const Vec3& r_m);

/// phi0 with r_a replaced by the estimate R_hat b_a + k_v (v - v_hat).
std::optional<double> try_phi(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                              const Vec3& r_m);
double phi(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m);

/// Basis vector u_i minimizing the cost after R_hat <- R_a(pi, u_i) R_hat.
/// Ties go to the lowest index. Throws ObservabilityLoss on guard failure.
Vec3 select_jump_axis(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m,
                      const HybridConfig& cfg);

/// The jump map: half-turn of R_hat about `axis`, other states unchanged.
ObserverState apply_jump(const ObserverState& st, const Vec3& axis);

struct HybridStepResult {
  HybridObserverState state;
  std::optional<JumpEvent> jump;
  std::optional<double> phi;  ///< cost before the step; nullopt if the guard failed
};

/// One hybrid transition. In the jump set (cost >= delta, overlap included)
/// the jump map is applied with t frozen and j incremented. Otherwise, or when
/// the cost cannot be evaluated, the proposed observer flows for dt.
HybridStepResult hybrid_step(const HybridObserverState& hst, const SensorFrame& frame, const GainConfig& g,
                             const Vec3& r_m, const HybridConfig& cfg, double dt);

}  // namespace velaid
