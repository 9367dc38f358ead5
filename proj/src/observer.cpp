#include "velaid/observer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace velaid {

namespace {

Vec3 accel_estimate_raw(const SensorFrame& f, const Vec3& v_hat, const Mat3& r_hat, double k_v) {
  return k_v * (f.v - v_hat) + r_hat * f.b_a;
}

Vec3 sigma_r_raw(const SensorFrame& f, const Vec3& v_hat, const Mat3& r_hat, const GainConfig& g,
                 const Vec3& r_m) {
  const Mat3 rt = r_hat.transpose();
  const Vec3 ra_hat = accel_estimate_raw(f, v_hat, r_hat, g.k_v);
  return g.rho1 * f.b_m.cross(rt * r_m) + g.rho2 * f.b_a.cross(rt * ra_hat);
}

Vec3 sigma_v_raw(const SensorFrame& f, const Vec3& v_hat, const Mat3& r_hat, const GainConfig& g,
                 const Vec3& sr) {
  return f.v - v_hat + (g.k_R / (g.k_v * g.k_v)) * (r_hat * sr.cross(f.b_a));
}

Vec3 sigma_r_hua_raw(const SensorFrame& f, const Vec3& v_hat, const Mat3& r_hat, const GainConfig& g,
                     const Vec3& r_m) {
  const Mat3 rt = r_hat.transpose();
  return g.rho1 * f.b_m.cross(rt * r_m) + g.rho2 * f.b_a.cross(rt * (f.v - v_hat));
}

}  // namespace

std::string_view to_string(ObserverLaw law) {
  switch (law) {
    case ObserverLaw::kProposed:
      return "proposed";
    case ObserverLaw::kHua2010:
      return "hua2010";
    case ObserverLaw::kRoberts2011:
      return "roberts2011";
  }
  return "unknown";
}

ObserverLaw parse_observer_law(std::string_view name) {
  if (name == "proposed" || name == "continuous") return ObserverLaw::kProposed;
  if (name == "hua2010") return ObserverLaw::kHua2010;
  if (name == "roberts2011") return ObserverLaw::kRoberts2011;
  throw std::invalid_argument("unknown observer law '" + std::string(name) + "'");
}

void GainConfig::validate() const {
  if (!(k_v > 0 && k_R > 0 && k_b > 0 && rho1 > 0 && rho2 > 0 && c5 > 0 && eps_proj > 0)) {
    throw std::invalid_argument("gain config: k_v, k_R, k_b, rho1, rho2, c5, eps_proj must be positive");
  }
}

Vec3 proj(const Vec3& b_hat, const Vec3& mu, double c5, double eps) {
  const double n2 = b_hat.squaredNorm();
  const double n = std::sqrt(n2);
  const double radial = b_hat.dot(mu);
  if (n <= c5 || radial <= 0.0) {
    return mu;
  }
  const double theta = std::min(1.0, (n - c5) / eps);
  return mu - theta * (radial / n2) * b_hat;
}

Vec3 accel_estimate(const SensorFrame& frame, const ObserverState& st, const GainConfig& g) {
  return accel_estimate_raw(frame, st.v_hat, st.r_hat.matrix(), g.k_v);
}

Vec3 sigma_r(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m) {
  return sigma_r_raw(frame, st.v_hat, st.r_hat.matrix(), g, r_m);
}

Vec3 sigma_v(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& sr) {
  return sigma_v_raw(frame, st.v_hat, st.r_hat.matrix(), g, sr);
}

Vec3 sigma_r_hua(const SensorFrame& frame, const ObserverState& st, const GainConfig& g, const Vec3& r_m) {
  return sigma_r_hua_raw(frame, st.v_hat, st.r_hat.matrix(), g, r_m);
}

Vec3 sigma_v_hua(const SensorFrame& frame, const ObserverState& st) { return frame.v - st.v_hat; }

namespace detail {

void check_step(double dt) {
  if (!(dt > 0.0 && dt <= 0.1)) {
    throw std::invalid_argument("observer step must lie in (0, 0.1]");
  }
}

namespace {

struct LawRates {
  Vec3 v_dot;
  Vec3 omega_hat;
  Vec3 b_dot;
};

LawRates law_rates(const SensorFrame& f, const Vec3& v_hat, const Mat3& r_hat, const Vec3& b_hat,
                   const GainConfig& g, const Vec3& r_m, ObserverLaw law) {
  LawRates out;
  const Vec3 gravity = kGravity * kE3;
  switch (law) {
    case ObserverLaw::kProposed: {
      const Vec3 sr = sigma_r_raw(f, v_hat, r_hat, g, r_m);
      const Vec3 sv = sigma_v_raw(f, v_hat, r_hat, g, sr);
      out.v_dot = gravity + r_hat * f.b_a + g.k_v * sv;
      out.omega_hat = f.omega_y - b_hat + g.k_R * sr;
      out.b_dot = proj(b_hat, -g.k_b * sr, g.c5, g.eps_proj);
      break;
    }
    case ObserverLaw::kRoberts2011: {
      const Vec3 sr = sigma_r_raw(f, v_hat, r_hat, g, r_m);
      const Vec3 sv = sigma_v_raw(f, v_hat, r_hat, g, sr);
      out.v_dot = gravity + r_hat * f.b_a + g.k_v * sv;
      out.omega_hat = f.omega_y + g.k_R * sr;
      out.b_dot = Vec3::Zero();
      break;
    }
    case ObserverLaw::kHua2010: {
      const Vec3 sr = sigma_r_hua_raw(f, v_hat, r_hat, g, r_m);
      out.v_dot = gravity + r_hat * f.b_a + g.k_v * (f.v - v_hat);
      out.omega_hat = f.omega_y + g.k_R * sr;
      out.b_dot = Vec3::Zero();
      break;
    }
  }
  return out;
}

}  // namespace

RawRates raw_rates(const SensorFrame& frame, const RawObserverState& s, const GainConfig& g,
                   const Vec3& r_m, ObserverLaw law) {
  const LawRates lr = law_rates(frame, s.v, s.r, s.b, g, r_m, law);
  return RawRates{lr.v_dot, s.r * skew(lr.omega_hat), lr.b_dot};
}

ObserverState finish_step(const RawObserverState& s, const GainConfig& g) {
  ObserverState out;
  out.v_hat = s.v;
  out.r_hat = renormalize(s.r);
  out.b_hat = s.b;
  // Continuous-time projection keeps |b_hat| <= c5 + eps; a finite step
  // tangent to that sphere can still overshoot it at second order.
  const double bound = g.c5 + g.eps_proj;
  const double n = out.b_hat.norm();
  if (n > bound) {
    out.b_hat *= bound / n;
    // The rescaled norm can round one ulp above the bound.
    while (out.b_hat.norm() > bound) out.b_hat *= 1.0 - std::numeric_limits<double>::epsilon();
  }
  return out;
}

}  // namespace detail

ObserverRates observer_rates(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                             const Vec3& r_m, ObserverLaw law) {
  const auto lr = detail::law_rates(frame, st.v_hat, st.r_hat.matrix(), st.b_hat, g, r_m, law);
  return ObserverRates{lr.v_dot, lr.omega_hat, lr.b_dot};
}

ObserverState observer_step(const SensorFrame& frame, const ObserverState& st, const GainConfig& g,
                            const Vec3& r_m, double dt, ObserverLaw law) {
  return observer_step_sampled([&frame](double) -> const SensorFrame& { return frame; }, frame.t, st, g,
                               r_m, dt, law);
}

ErrorState error_state(const RigidBodyState& truth, const ObserverState& st, const Vec3& b_omega,
                       const SensorFrame& frame, const GainConfig& g) {
  ErrorState e;
  e.r_tilde = truth.r * st.r_hat.transpose();
  e.v_tilde = truth.v - st.v_hat;
  e.b_tilde = st.b_hat - b_omega;
  const Vec3 r_a = truth.r * frame.b_a;
  e.r_a_tilde = r_a - accel_estimate(frame, st, g);
  return e;
}

LyapunovValue lyapunov_v(const ErrorState& err, const ObserverState& st, const GainConfig& g, double mu) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("lyapunov_v: mu must be positive");
  }
  const double d2 = so3_distance_sq(err.r_tilde);
  const double bias_gain = mu * g.k_R / (2.0 * g.k_b);
  const Vec3 psi_r = psi(err.r_tilde.matrix());
  // The cross term is written for b_omega - b_hat, i.e. -b_tilde here.
  const double cross = -mu * err.b_tilde.dot(st.r_hat.matrix().transpose() * psi_r);

  LyapunovValue out;
  out.v = d2 + bias_gain * err.b_tilde.squaredNorm() + cross + 0.5 * err.r_a_tilde.squaredNorm();

  const double z1 = std::sqrt(d2);
  const double z2 = err.b_tilde.norm();
  const double z3 = err.r_a_tilde.norm();
  const double diag = z1 * z1 + bias_gain * z2 * z2 + 0.5 * z3 * z3;
  out.lower = diag - 2.0 * mu * z1 * z2;
  out.upper = diag + 2.0 * mu * z1 * z2;
  return out;
}

}  // namespace velaid
