#include "velaid/sensors.hpp"

#include <stdexcept>

namespace velaid {

void SensorConfig::validate() const {
  if (!(r_m.norm() > 0.0)) {
    throw std::invalid_argument("sensor config: r_m must be nonzero");
  }
  if (noise.gyro < 0.0 || noise.accel < 0.0 || noise.mag < 0.0 || noise.gps < 0.0) {
    throw std::invalid_argument("sensor config: noise standard deviations must be nonnegative");
  }
}

Vec3 SensorNoise::draw(double std_dev) {
  Vec3 n;
  for (int i = 0; i < 3; ++i) n[i] = std_dev * normal_(rng_);
  return n;
}

SensorFrame sample(const SensorConfig& cfg, const RigidBodyState& truth, const Vec3& omega,
                   const Vec3& r_a, double t) {
  const Mat3 rt = truth.r.matrix().transpose();
  SensorFrame f;
  f.omega_y = omega + cfg.b_omega;
  f.b_a = rt * r_a;
  f.b_m = rt * cfg.r_m;
  f.v = truth.v;
  f.t = t;
  return f;
}

SensorFrame sample(const SensorConfig& cfg, const RigidBodyState& truth, const Vec3& omega,
                   const Vec3& r_a, double t, SensorNoise& noise) {
  SensorFrame f = sample(cfg, truth, omega, r_a, t);
  // Always draw all four vectors so the stream layout is independent of
  // which sensors are noisy.
  f.omega_y += noise.draw(cfg.noise.gyro);
  f.b_a += noise.draw(cfg.noise.accel);
  f.b_m += noise.draw(cfg.noise.mag);
  f.v += noise.draw(cfg.noise.gps);
  return f;
}

}  // namespace velaid
