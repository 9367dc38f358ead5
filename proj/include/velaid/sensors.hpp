#pragma once

#include <cstdint>
#include <random>

#include "velaid/rigid_body.hpp"

namespace velaid {

/// One time sample of the sensor suite.
struct SensorFrame {
  Vec3 omega_y = Vec3::Zero();  ///< gyro, rad/s (biased)
  Vec3 b_a = Vec3::Zero();      ///< accelerometer, body frame, m/s^2
  Vec3 b_m = Vec3::Zero();      ///< magnetometer, body frame
  Vec3 v = Vec3::Zero();        ///< GPS velocity, inertial frame, m/s
  double t = 0.0;
};

struct NoiseStd {
  double gyro = 0.0;
  double accel = 0.0;
  double mag = 0.0;
  double gps = 0.0;

  bool any() const { return gyro > 0.0 || accel > 0.0 || mag > 0.0 || gps > 0.0; }
};

struct SensorConfig {
  Vec3 r_m{0.18, 0.0, 0.54};
  Vec3 b_omega = Vec3::Zero();  ///< true constant gyro bias, rad/s
  NoiseStd noise;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for r_m == 0 or negative noise levels.
  void validate() const;
};

/// Noise source threaded explicitly through a run so streams are
/// reproducible from the seed.
class SensorNoise {
 public:
  explicit SensorNoise(std::uint64_t seed) : rng_(seed) {}
  Vec3 draw(double std_dev);

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Noise-free measurement model: b_m = R^T r_m, b_a = R^T r_a,
/// omega_y = omega + b_omega.
SensorFrame sample(const SensorConfig& cfg, const RigidBodyState& truth, const Vec3& omega,
                   const Vec3& r_a, double t);

/// Same, plus zero-mean Gaussian noise per cfg.noise drawn from `noise`.
SensorFrame sample(const SensorConfig& cfg, const RigidBodyState& truth, const Vec3& omega,
                   const Vec3& r_a, double t, SensorNoise& noise);

}  // namespace velaid
