#pragma once

#include <functional>
#include <span>
#include <vector>

#include "velaid/so3.hpp"

namespace velaid {

/// Standard gravity in m/s^2. The inertial z axis points down (e3).
inline constexpr double kGravity = 9.81;

inline const Vec3 kE3{0.0, 0.0, 1.0};

/// Ground-truth state: body-to-inertial attitude and inertial velocity.
struct RigidBodyState {
  RotationMatrix r;
  Vec3 v = Vec3::Zero();
};

/// Closed-form trajectory. `vdot` must be the exact derivative of `v` and
/// `vddot` the exact derivative of `vdot`.
struct TrajectorySpec {
  std::function<Vec3(double)> v;
  std::function<Vec3(double)> vdot;
  std::function<Vec3(double)> vddot;
  std::function<Vec3(double)> omega;
  RotationMatrix r0;
};

/// Per-axis sinusoid parameters: v_i(t) = offset_i + amp_i cos(freq_i t + phase_i)
/// and omega_i(t) = amp_i sin(freq_i t + phase_i).
struct SinusoidTrajectoryParams {
  Vec3 v_offset = Vec3::Zero();
  Vec3 v_amp = Vec3::Zero();
  Vec3 v_freq = Vec3::Zero();
  Vec3 v_phase = Vec3::Zero();
  Vec3 w_amp = Vec3::Zero();
  Vec3 w_freq = Vec3::Zero();
  Vec3 w_phase = Vec3::Zero();
  RotationMatrix r0;
};

TrajectorySpec make_sinusoid_trajectory(const SinusoidTrajectoryParams& p);

/// The reference manoeuvre used throughout the simulation study: the body
/// starts upside down (half-turn about y) and follows sinusoidal velocity
/// and angular-velocity profiles.
SinusoidTrajectoryParams reference_trajectory_params();
TrajectorySpec reference_trajectory();

/// Apparent (non-gravitational) acceleration r_a = vdot - g e3.
Vec3 apparent_accel(const TrajectorySpec& spec, double t);

/// Time derivative of r_a, i.e. vddot.
Vec3 apparent_accel_rate(const TrajectorySpec& spec, double t);

/// One RK4 step of vdot = g e3 + R b_a, Rdot = R [omega]_x with inputs held
/// constant over the step, followed by renormalization.
/// Throws std::invalid_argument unless dt is in (0, 0.1].
RigidBodyState step(const RigidBodyState& state, const Vec3& omega, const Vec3& b_a, double dt);

/// RK4 attitude step from t to t + dt with omega sampled from `spec` at the
/// RK4 stages. Velocity is set analytically to spec.v(t + dt).
RigidBodyState step(const RigidBodyState& state, const TrajectorySpec& spec, double t, double dt);

/// Ground truth on a strictly increasing grid starting at 0. Velocity is
/// analytic; attitude is integrated from spec.r0.
std::vector<RigidBodyState> truth_at(const TrajectorySpec& spec, std::span<const double> t_grid);

}  // namespace velaid
