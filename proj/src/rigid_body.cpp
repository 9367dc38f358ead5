#include "velaid/rigid_body.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace velaid {

namespace {

void check_dt(double dt) {
  if (!(dt > 0.0 && dt <= 0.1)) {
    throw std::invalid_argument("integration step must lie in (0, 0.1]");
  }
}

// RK4 on Rdot = R [w(s)]_x for s in {t, t + dt/2, t + dt}.
Mat3 rk4_attitude(const Mat3& r, const Vec3& w0, const Vec3& wmid, const Vec3& w1, double dt) {
  const Mat3 k1 = r * skew(w0);
  const Mat3 k2 = (r + 0.5 * dt * k1) * skew(wmid);
  const Mat3 k3 = (r + 0.5 * dt * k2) * skew(wmid);
  const Mat3 k4 = (r + dt * k3) * skew(w1);
  return r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TrajectorySpec make_sinusoid_trajectory(const SinusoidTrajectoryParams& p) {
  TrajectorySpec spec;
  spec.v = [p](double t) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) out[i] = p.v_offset[i] + p.v_amp[i] * std::cos(p.v_freq[i] * t + p.v_phase[i]);
    return out;
  };
  spec.vdot = [p](double t) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) out[i] = -p.v_amp[i] * p.v_freq[i] * std::sin(p.v_freq[i] * t + p.v_phase[i]);
    return out;
  };
  spec.vddot = [p](double t) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      out[i] = -p.v_amp[i] * p.v_freq[i] * p.v_freq[i] * std::cos(p.v_freq[i] * t + p.v_phase[i]);
    }
    return out;
  };
  spec.omega = [p](double t) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) out[i] = p.w_amp[i] * std::sin(p.w_freq[i] * t + p.w_phase[i]);
    return out;
  };
  spec.r0 = p.r0;
  return spec;
}

SinusoidTrajectoryParams reference_trajectory_params() {
  SinusoidTrajectoryParams p;
  p.v_amp = Vec3(2.0, 3.75, 0.5);
  p.v_freq = Vec3(0.5, 1.25, 0.5);
  p.v_phase = Vec3(0.5, 0.5, 0.5);
  p.w_amp = Vec3(1.0, 0.5, 0.1);
  p.w_freq = Vec3(0.1, 0.2, 0.3);
  p.w_phase = Vec3(std::numbers::pi, 0.0, std::numbers::pi / 3.0);
  p.r0 = angle_axis(std::numbers::pi, Vec3::UnitY());
  return p;
}

TrajectorySpec reference_trajectory() { return make_sinusoid_trajectory(reference_trajectory_params()); }

Vec3 apparent_accel(const TrajectorySpec& spec, double t) { return spec.vdot(t) - kGravity * kE3; }

Vec3 apparent_accel_rate(const TrajectorySpec& spec, double t) { return spec.vddot(t); }

RigidBodyState step(const RigidBodyState& state, const Vec3& omega, const Vec3& b_a, double dt) {
  check_dt(dt);
  const Mat3& r = state.r.matrix();
  const Mat3 r_next = rk4_attitude(r, omega, omega, omega, dt);

  // vdot depends on R only; integrate it with the same RK4 stages.
  const Mat3 k1 = r * skew(omega);
  const Mat3 r2 = r + 0.5 * dt * k1;
  const Mat3 k2 = r2 * skew(omega);
  const Mat3 r3 = r + 0.5 * dt * k2;
  const Mat3 k3 = r3 * skew(omega);
  const Mat3 r4 = r + dt * k3;
  const Vec3 a1 = kGravity * kE3 + r * b_a;
  const Vec3 a2 = kGravity * kE3 + r2 * b_a;
  const Vec3 a3 = kGravity * kE3 + r3 * b_a;
  const Vec3 a4 = kGravity * kE3 + r4 * b_a;

  RigidBodyState next;
  next.r = renormalize(r_next);
  next.v = state.v + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  return next;
}

RigidBodyState step(const RigidBodyState& state, const TrajectorySpec& spec, double t, double dt) {
  check_dt(dt);
  RigidBodyState next;
  next.r = renormalize(
      rk4_attitude(state.r.matrix(), spec.omega(t), spec.omega(t + 0.5 * dt), spec.omega(t + dt), dt));
  next.v = spec.v(t + dt);
  return next;
}

std::vector<RigidBodyState> truth_at(const TrajectorySpec& spec, std::span<const double> t_grid) {
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw std::invalid_argument("truth_at: grid must start at 0");
  }
  std::vector<RigidBodyState> out;
  out.reserve(t_grid.size());
  out.push_back({spec.r0, spec.v(0.0)});
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double t0 = t_grid[k - 1];
    const double t1 = t_grid[k];
    if (!(t1 > t0)) {
      throw std::invalid_argument("truth_at: grid must be strictly increasing");
    }
    // Sub-step long gaps so the integrator never exceeds its step limit.
    const int n = static_cast<int>(std::ceil((t1 - t0) / 0.01 - 1e-9));
    const double h = (t1 - t0) / n;
    RigidBodyState s = out.back();
    for (int i = 0; i < n; ++i) {
      s = step(s, spec, t0 + i * h, h);
    }
    s.v = spec.v(t1);
    out.push_back(s);
  }
  return out;
}

}  // namespace velaid
