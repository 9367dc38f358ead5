#include "velaid/hybrid.hpp"

#include <cmath>
#include <numbers>

namespace velaid {

void HybridConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0 / 7.0)) {
    throw std::invalid_argument("hybrid config: alpha must lie in (0, 2/7)");
  }
  if (!(3.0 + 2.5 * alpha < delta && delta < 4.0 - alpha)) {
    throw std::invalid_argument("hybrid config: delta must satisfy 3 + 5 alpha/2 < delta < 4 - alpha");
  }
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const double expected = i == k ? 1.0 : 0.0;
      if (std::abs(basis[i].dot(basis[k]) - expected) > kConstructTol) {
        throw std::invalid_argument("hybrid config: jump basis is not orthonormal");
      }
    }
  }
}

std::optional<double> try_phi0(const RotationMatrix& r_hat, const Vec3& b_m, const Vec3& b_a, const Vec3& r_a,
                               const Vec3& r_m) {
  const Vec3 bmba = b_m.cross(b_a);
  const double bm2 = b_m.squaredNorm();
  if (!(bm2 > 0.0) || !(bmba.norm() >= kObservabilityGuard * std::sqrt(bm2) * b_a.norm())) {
    return std::nullopt;
  }
  const Vec3 bm_bmba = b_m.cross(bmba);
  const Vec3 rmra = r_m.cross(r_a);
  const Vec3 rm_rmra = r_m.cross(rmra);
  const Mat3& rh = r_hat.matrix();
  return 3.0 - r_m.dot(rh * b_m) / bm2 - rmra.dot(rh * bmba) / bmba.squaredNorm() -
         rm_rmra.dot(rh * bm_bmba) / bm_bmba.squaredNorm();
}

double phi0(const RotationMatrix& r_hat, const Vec3& b_m, const Vec3& b_a, const Vec3& r_a, const Vec3& r_m) {
  const auto value = try_phi0(r_hat, b_m, b_a, r_a, r_m);
  if (!value) {
    throw ObservabilityLoss("attitude cost undefined: b_m and b_a are (nearly) collinear");
  }
  return *value;
}

std::optional<double> try_phi(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                              const Vec3& r_m) {
  return try_phi0(st.r_hat, frame.b_m, frame.b_a, accel_estimate(frame, st, g), r_m);
}

double phi(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m) {
  return phi0(st.r_hat, frame.b_m, frame.b_a, accel_estimate(frame, st, g), r_m);
}

ObserverState apply_jump(const ObserverState& st, const Vec3& axis) {
  ObserverState out = st;
  out.r_hat = angle_axis(std::numbers::pi, axis) * st.r_hat;
  return out;
}

Vec3 select_jump_axis(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m,
                      const HybridConfig& cfg) {
  int best = 0;
  double best_cost = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double cost = phi(frame, apply_jump(st, cfg.basis[i]), g, r_m);
    if (i == 0 || cost < best_cost) {
      best = i;
      best_cost = cost;
    }
  }
  return cfg.basis[best];
}

HybridStepResult hybrid_step(const HybridObserverState& hst, const SensorFrame& frame, const GainConfig& g,
                             const Vec3& r_m, const HybridConfig& cfg, double dt) {
  HybridStepResult out;
  out.phi = try_phi(frame, hst.base, g, r_m);
  if (out.phi && *out.phi >= cfg.delta) {
    const Vec3 axis = select_jump_axis(frame, hst.base, g, r_m, cfg);
    out.state = hst;
    out.state.base = apply_jump(hst.base, axis);
    out.state.j = hst.j + 1;
    JumpEvent ev;
    ev.t = hst.t;
    ev.j_before = hst.j;
    ev.phi_before = *out.phi;
    ev.phi_after = phi(frame, out.state.base, g, r_m);
    ev.axis = axis;
    out.jump = ev;
    return out;
  }
  out.state = hst;
  out.state.base = observer_step(frame, hst.base, g, r_m, dt, ObserverLaw::kProposed);
  out.state.t = hst.t + dt;
  return out;
}

}  // namespace velaid
