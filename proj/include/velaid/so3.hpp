#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace velaid {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance for invariants of constructed rotations and unit vectors.
inline constexpr double kConstructTol = 1e-9;

/// Raised when an argument leaves the domain of an SO(3) operation
/// (non-antisymmetric input to vex, non-unit axis, matrix far from SO(3)).
class So3DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A 3x3 rotation matrix. Construction validates orthogonality and the
/// determinant against kConstructTol, so every instance lies on SO(3).
class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::Identity()) {}

  /// Validates `m`; throws So3DomainError when ||m^T m - I||_F or
  /// |det(m) - 1| exceeds kConstructTol.
  explicit RotationMatrix(const Mat3& m);

  static RotationMatrix identity() { return RotationMatrix(); }

  const Mat3& matrix() const { return m_; }
  RotationMatrix transpose() const { return unchecked(m_.transpose()); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// Product of two rotations. The result is renormalized when rounding
  /// has pushed it outside kConstructTol.
  RotationMatrix operator*(const RotationMatrix& other) const;

  double operator()(int r, int c) const { return m_(r, c); }

 private:
  static RotationMatrix unchecked(const Mat3& m) {
    RotationMatrix r;
    r.m_ = m;
    return r;
  }
  friend RotationMatrix renormalize(const Mat3& m);

  Mat3 m_;
};

/// [v]_x: the antisymmetric matrix with skew(v) * w == v.cross(w).
Mat3 skew(const Vec3& v);

/// Inverse of skew. Throws So3DomainError if `m` is not antisymmetric
/// within kConstructTol (max-abs of m + m^T).
Vec3 vex(const Mat3& m);

/// Antisymmetric part (m - m^T) / 2.
Mat3 antisymmetric_part(const Mat3& m);

/// vex of the antisymmetric part; defined for any 3x3 matrix.
Vec3 psi(const Mat3& a);

/// Rodrigues form I + sin(theta)[u]_x + (1 - cos(theta))[u]_x^2.
/// Throws So3DomainError unless ||u|| == 1 within kConstructTol.
RotationMatrix angle_axis(double theta, const Vec3& u);

/// Squared normalized distance |R|_I^2 = tr(I - R) / 4.
double so3_distance_sq(const RotationMatrix& r);

/// Same quantity via (1/8)||I - R||_F^2. Kept as an independent route.
double so3_distance_sq_frobenius(const RotationMatrix& r);

/// |R|_I in [0, 1]: 0 at the identity, 1 at any half-turn.
double so3_distance(const RotationMatrix& r);

/// Rotation angle in radians, in [0, pi].
double rotation_angle(const RotationMatrix& r);

/// Nearest rotation (polar factor). Throws So3DomainError when `m` is
/// farther than 0.1 in Frobenius norm from the returned rotation.
RotationMatrix renormalize(const Mat3& m);

/// Frobenius norm of R^T R - I.
double orthogonality_error(const Mat3& m);

}  // namespace velaid
