// Generators and independent reference computations shared by the tests.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "velaid/so3.hpp"

namespace testing {

using velaid::Mat3;
using velaid::Vec3;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDeg = kPi / 180.0;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return normal_(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vec3 vec(double scale = 1.0) { return scale * Vec3(normal(), normal(), normal()); }

  Vec3 unit() {
    for (;;) {
      const Vec3 v = vec();
      if (v.norm() > 1e-3) return v.normalized();
    }
  }

  Vec3 in_ball(double radius) { return unit() * radius * std::cbrt(uniform(0.0, 1.0)); }

  // Uniform (Haar) rotation from a normalized Gaussian quaternion.
  Mat3 rotation() {
    Eigen::Vector4d q(normal(), normal(), normal(), normal());
    q.normalize();
    return quat_to_matrix(q);
  }

  Mat3 rotation_with_angle(double angle) { return quat_axis_angle(unit(), angle); }

  // Quaternion (w, x, y, z) to rotation matrix; written out by hand so it
  // shares no code with the library's Rodrigues formula.
  static Mat3 quat_to_matrix(const Eigen::Vector4d& q) {
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Mat3 m;
    m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return m;
  }

  static Mat3 quat_axis_angle(const Vec3& u, double angle) {
    const double s = std::sin(angle / 2);
    return quat_to_matrix(Eigen::Vector4d(std::cos(angle / 2), s * u.x(), s * u.y(), s * u.z()));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

// |R|_I^2 from the rotation angle: sin^2(theta / 2).
inline double dist_sq_from_angle(double theta) { return std::pow(std::sin(theta / 2), 2); }

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
