#include "doctest.h"
#include "support.hpp"
#include "velaid/so3.hpp"

using namespace velaid;
using testing::Gen;
using testing::kPi;

TEST_CASE("skew and vex are inverse and skew encodes the cross product") {
  Gen gen(1);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = gen.vec(3.0);
    const Vec3 b = gen.vec(3.0);
    CHECK((skew(a) * b - a.cross(b)).norm() < 1e-12);
    CHECK((vex(skew(a)) - a).norm() == 0.0);
    CHECK((skew(a) + skew(a).transpose()).norm() == 0.0);
  }
}

TEST_CASE("vex rejects a matrix with a symmetric part") {
  Mat3 m = skew(Vec3(1, 2, 3));
  m(0, 1) += 1e-6;
  CHECK_THROWS_AS(vex(m), So3DomainError);
}

TEST_CASE("psi of a symmetric matrix is zero and psi(skew(v)) is v") {
  Gen gen(2);
  for (int i = 0; i < 50; ++i) {
    const Mat3 s = [&] {
      Mat3 a = Mat3::Random();
      return Mat3(a + a.transpose());
    }();
    CHECK(psi(s).norm() < 1e-15);
    const Vec3 v = gen.vec();
    CHECK((psi(skew(v) + s) - v).norm() < 1e-14);
  }
}

TEST_CASE("angle_axis matches an independent quaternion construction") {
  Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 u = gen.unit();
    const double th = gen.uniform(-kPi, kPi);
    CHECK(testing::max_abs(angle_axis(th, u).matrix() - Gen::quat_axis_angle(u, th)) < 1e-14);
  }
}

TEST_CASE("angle_axis rejects a non-unit axis") {
  CHECK_THROWS_AS(angle_axis(1.0, Vec3(1.0, 0.0, 1e-4)), So3DomainError);
  CHECK_THROWS_AS(angle_axis(1.0, Vec3::Zero()), So3DomainError);
}

TEST_CASE("half-turn about y is diag(-1, 1, -1)") {
  const Mat3 r = angle_axis(kPi, Vec3::UnitY()).matrix();
  CHECK(testing::max_abs(r - Vec3(-1, 1, -1).asDiagonal().toDenseMatrix()) < 1e-15);
  CHECK(so3_distance(RotationMatrix(r)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalized distance: both routes agree with sin^2(theta/2)") {
  Gen gen(4);
  for (int i = 0; i < 500; ++i) {
    const double th = gen.uniform(0.0, kPi);
    const RotationMatrix r(gen.rotation_with_angle(th));
    const double ref = testing::dist_sq_from_angle(th);
    CHECK(std::abs(so3_distance_sq(r) - ref) < 1e-14);
    CHECK(std::abs(so3_distance_sq_frobenius(r) - ref) < 1e-14);
    CHECK(std::abs(rotation_angle(r) - th) < 1e-7);
  }
  CHECK(so3_distance(RotationMatrix::identity()) == 0.0);
}

TEST_CASE("RotationMatrix construction validates membership") {
  CHECK_NOTHROW(RotationMatrix(Mat3::Identity()));
  CHECK_THROWS_AS(RotationMatrix(2.0 * Mat3::Identity()), So3DomainError);
  CHECK_THROWS_AS(RotationMatrix(Vec3(1, 1, -1).asDiagonal().toDenseMatrix()), So3DomainError);
  Mat3 m = Mat3::Identity();
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(RotationMatrix{m}, So3DomainError);
}

TEST_CASE("renormalize returns the polar factor and rejects reflections") {
  Gen gen(5);
  for (int i = 0; i < 100; ++i) {
    const Mat3 r = gen.rotation();
    const Mat3 noisy = r + 1e-4 * Mat3::Random();
    const RotationMatrix out = renormalize(noisy);
    CHECK(orthogonality_error(out.matrix()) < 1e-13);
    CHECK(testing::max_abs(out.matrix() - r) < 1e-3);
    CHECK(testing::max_abs(renormalize(r).matrix() - r) < 1e-14);
  }
  CHECK_THROWS_AS(renormalize(-Mat3::Identity()), So3DomainError);
  CHECK_THROWS_AS(renormalize(Mat3::Identity() + 0.5 * Mat3::Ones()), So3DomainError);
}

TEST_CASE("long products stay on SO(3)") {
  Gen gen(6);
  RotationMatrix acc;
  const RotationMatrix step(gen.rotation_with_angle(0.37));
  for (int i = 0; i < 100000; ++i) acc = acc * step;
  CHECK(orthogonality_error(acc.matrix()) < 1e-9);
  CHECK(std::abs(acc.matrix().determinant() - 1.0) < 1e-9);
}
