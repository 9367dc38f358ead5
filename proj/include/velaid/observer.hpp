#pragma once

#include <string_view>

#include "velaid/rigid_body.hpp"
#include "velaid/sensors.hpp"

namespace velaid {

enum class ObserverLaw {
  kProposed,    ///< velocity-aided observer with projected gyro-bias adaptation
  kHua2010,     ///< baseline: sigma_v = v - vhat, no bias estimation
  kRoberts2011  ///< baseline: acceleration-estimate correction, no bias estimation
};

std::string_view to_string(ObserverLaw law);

/// Throws std::invalid_argument for unknown names.
ObserverLaw parse_observer_law(std::string_view name);

struct GainConfig {
  double k_v = 1.0;
  double k_R = 2.0;
  double k_b = 3.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double c5 = 0.3;        ///< radius of the ball the bias estimate is kept in, rad/s
  double eps_proj = 0.05; ///< width of the projection boundary layer, rad/s

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
};

struct ObserverState {
  Vec3 v_hat = Vec3::Zero();
  RotationMatrix r_hat;
  Vec3 b_hat = Vec3::Zero();
};

/// Estimation errors. Bias error is b_hat - b_omega.
struct ErrorState {
  RotationMatrix r_tilde;  ///< R R_hat^T
  Vec3 b_tilde = Vec3::Zero();
  Vec3 r_a_tilde = Vec3::Zero();
  Vec3 v_tilde = Vec3::Zero();
};

/// Smooth projection of the adaptation increment `mu` keeping the
/// estimate `b_hat` inside the ball of radius c5. Inside the ball, or when
/// mu points inward, mu is returned unchanged. Otherwise the outward radial
/// component is removed with a weight ramping linearly from 0 at
/// ||b_hat|| = c5 to 1 at ||b_hat|| = c5 + eps (clamped to 1 beyond).
///
/// For every ||b_omega|| <= c5 this satisfies
///   ||proj|| <= ||mu||  and  (b_hat - b_omega)^T proj <= (b_hat - b_omega)^T mu.
Vec3 proj(const Vec3& b_hat, const Vec3& mu, double c5, double eps);

/// Acceleration estimate r_hat_a = k_v (v - v_hat) + R_hat b_a.
Vec3 accel_estimate(const SensorFrame& frame, const ObserverState& st, const GainConfig& g);

/// sigma_R = rho1 (b_m x R_hat^T r_m) + rho2 (b_a x R_hat^T r_hat_a).
Vec3 sigma_r(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m);

/// sigma_v = v - v_hat + (k_R / k_v^2) R_hat [sr]_x b_a.
Vec3 sigma_v(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& sr);

/// Baseline correction terms with the raw velocity error in place of the
/// acceleration estimate.
Vec3 sigma_r_hua(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m);
Vec3 sigma_v_hua(const SensorFrame& frame, const ObserverState& st);

/// Right-hand side of an observer law, R_hat_dot = R_hat [omega_hat]_x.
struct ObserverRates {
  Vec3 v_hat_dot = Vec3::Zero();
  Vec3 omega_hat = Vec3::Zero();
  Vec3 b_hat_dot = Vec3::Zero();
};

ObserverRates observer_rates(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                             const Vec3& r_m, ObserverLaw law);

/// RK4 step of `law` with the sensor frame held over [t, t + dt], followed
/// by renormalization of R_hat. The bias estimate is clipped back to the
/// ball of radius c5 + eps_proj if the discrete step overshoots it.
/// Throws std::invalid_argument unless dt is in (0, 0.1].
ObserverState observer_step(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                            const Vec3& r_m, double dt, ObserverLaw law);

/// Variant for joint truth/observer integration: `frame_at(s)` supplies the
/// sensor frame at each RK4 stage time s in {t, t + dt/2, t + dt}.
template <class FrameAt>
ObserverState observer_step_sampled(FrameAt&& frame_at, double t, const ObserverState& st,
                                    const GainConfig& g, const Vec3& r_m, double dt, ObserverLaw law);

ErrorState error_state(const RigidBodyState& truth, const ObserverState& st, const Vec3& b_omega,
                       const SensorFrame& frame, const GainConfig& g);

struct LyapunovValue {
  double v = 0.0;
  double lower = 0.0;  ///< z^T P1 z
  double upper = 0.0;  ///< z^T P2 z
};

/// V = |R~|_I^2 + (mu k_R / 2 k_b)|b~|^2 + mu (b_omega - b_hat)^T R_hat^T psi(R~) + |r~_a|^2 / 2
/// with the quadratic bounds in z = [|R~|_I, |b~|, |r~_a|].
/// Throws std::invalid_argument unless mu > 0.
LyapunovValue lyapunov_v(const ErrorState& err, const ObserverState& st, const GainConfig& g, double mu);

// ---------------------------------------------------------------------------

namespace detail {

// State in the embedding space; RK4 stages leave SO(3) by O(dt^5).
struct RawObserverState {
  Vec3 v;
  Mat3 r;
  Vec3 b;
};

struct RawRates {
  Vec3 v_dot;
  Mat3 r_dot;
  Vec3 b_dot;
};

RawRates raw_rates(const SensorFrame& frame, const RawObserverState& s, const GainConfig& g,
                   const Vec3& r_m, ObserverLaw law);

ObserverState finish_step(const RawObserverState& s, const GainConfig& g);

void check_step(double dt);

}  // namespace detail

template <class FrameAt>
ObserverState observer_step_sampled(FrameAt&& frame_at, double t, const ObserverState& st,
                                    const GainConfig& g, const Vec3& r_m, double dt, ObserverLaw law) {
  using detail::RawObserverState;
  using detail::raw_rates;
  detail::check_step(dt);
  const RawObserverState s0{st.v_hat, st.r_hat.matrix(), st.b_hat};
  const SensorFrame f0 = frame_at(t);
  const SensorFrame fm = frame_at(t + 0.5 * dt);
  const SensorFrame f1 = frame_at(t + dt);
  const auto advance = [](const RawObserverState& s, const detail::RawRates& k, double h) {
    return RawObserverState{s.v + h * k.v_dot, s.r + h * k.r_dot, s.b + h * k.b_dot};
  };
  const auto k1 = raw_rates(f0, s0, g, r_m, law);
  const auto k2 = raw_rates(fm, advance(s0, k1, 0.5 * dt), g, r_m, law);
  const auto k3 = raw_rates(fm, advance(s0, k2, 0.5 * dt), g, r_m, law);
  const auto k4 = raw_rates(f1, advance(s0, k3, dt), g, r_m, law);
  const RawObserverState out{
      s0.v + (dt / 6.0) * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot),
      s0.r + (dt / 6.0) * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot),
      s0.b + (dt / 6.0) * (k1.b_dot + 2.0 * k2.b_dot + 2.0 * k3.b_dot + k4.b_dot)};
  return detail::finish_step(out, g);
}

}  // namespace velaid
