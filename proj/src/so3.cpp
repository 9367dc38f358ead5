#include "velaid/so3.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace velaid {

namespace {
constexpr double kRenormalizeReach = 0.1;
}

RotationMatrix::RotationMatrix(const Mat3& m) : m_(m) {
  if (!m.allFinite()) {
    throw So3DomainError("rotation matrix has non-finite entries");
  }
  const double orth = orthogonality_error(m);
  const double det = m.determinant();
  if (orth > kConstructTol || std::abs(det - 1.0) > kConstructTol) {
    throw So3DomainError("matrix is not a rotation (orthogonality error " +
                         std::to_string(orth) + ", det " + std::to_string(det) + ")");
  }
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& other) const {
  const Mat3 p = m_ * other.m_;
  if (orthogonality_error(p) > kConstructTol || std::abs(p.determinant() - 1.0) > kConstructTol) {
    return renormalize(p);
  }
  return unchecked(p);
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vex(const Mat3& m) {
  const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kConstructTol)) {
    throw So3DomainError("vex: matrix is not antisymmetric (|m + m^T|_max = " +
                         std::to_string(asym) + ")");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 antisymmetric_part(const Mat3& m) { return 0.5 * (m - m.transpose()); }

Vec3 psi(const Mat3& a) {
  return 0.5 * Vec3(a(2, 1) - a(1, 2), a(0, 2) - a(2, 0), a(1, 0) - a(0, 1));
}

RotationMatrix angle_axis(double theta, const Vec3& u) {
  if (std::abs(u.norm() - 1.0) > kConstructTol) {
    throw So3DomainError("angle_axis: axis is not a unit vector");
  }
  const Mat3 k = skew(u);
  const Mat3 r = Mat3::Identity() + std::sin(theta) * k + (1.0 - std::cos(theta)) * (k * k);
  // Rodrigues output is orthogonal up to rounding of the unit axis; the
  // polar step removes the residual without moving an exact rotation.
  if (orthogonality_error(r) > 1e-13) {
    return renormalize(r);
  }
  return RotationMatrix(r);
}

double so3_distance_sq(const RotationMatrix& r) {
  return std::clamp(0.25 * (3.0 - r.matrix().trace()), 0.0, 1.0);
}

double so3_distance_sq_frobenius(const RotationMatrix& r) {
  return 0.125 * (Mat3::Identity() - r.matrix()).squaredNorm();
}


double rotation_angle(const RotationMatrix& r) {
  // tr(R) = 1 + 2 cos(angle); atan2 keeps precision near 0 and pi.
  const double c = 0.5 * (r.matrix().trace() - 1.0);
  const double s = psi(r.matrix()).norm();
  return std::atan2(s, c);
}

// sin(angle / 2) rather than the square root of the trace form, which
// amplifies rounding near the identity to ~1e-8.
double so3_distance(const RotationMatrix& r) { return std::sin(0.5 * rotation_angle(r)); }

RotationMatrix renormalize(const Mat3& m) {
  if (!m.allFinite()) {
    throw So3DomainError("renormalize: non-finite input");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    throw So3DomainError("renormalize: input is closer to a reflection than a rotation");
  }
  if ((m - r).norm() > kRenormalizeReach) {
    throw So3DomainError("renormalize: input too far from SO(3)");
  }
  return RotationMatrix::unchecked(r);
}

double orthogonality_error(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).norm();
}

}  // namespace velaid
