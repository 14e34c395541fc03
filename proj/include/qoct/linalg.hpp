#pragma once

#include <array>
#include <cstddef>

namespace qoct {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
double distance(const Vec3& a, const Vec3& b);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);

/// Dense row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  static Mat3 identity();
  Mat3 transposed() const;
};

Mat3 operator*(const Mat3& x, const Mat3& y);
Mat3 operator+(const Mat3& x, const Mat3& y);
Mat3 operator-(const Mat3& x, const Mat3& y);
Mat3 operator*(double s, const Mat3& x);
Vec3 operator*(const Mat3& x, const Vec3& v);
/// Largest absolute entry of x - y.
double max_abs_diff(const Mat3& x, const Mat3& y);

/// Real unit vector (psi1, psi2, psi3) on the 2-sphere.
class StateS2 {
 public:
  /// Throws ErrorCode::Domain unless |v| = 1 within tol::structural.
  static StateS2 from(const Vec3& v);
  /// As from(), and additionally requires every component >= -tol::octant.
  static StateS2 octant(const Vec3& v);
  /// Scales v onto the sphere. Throws on a zero or non-finite vector.
  static StateS2 normalized(const Vec3& v);

  static StateS2 source() { return StateS2(Vec3{1.0, 0.0, 0.0}); }
  static StateS2 target() { return StateS2(Vec3{0.0, 0.0, 1.0}); }

  double psi1() const { return v_[0]; }
  double psi2() const { return v_[1]; }
  double psi3() const { return v_[2]; }
  double operator[](std::size_t i) const { return v_[i]; }
  const Vec3& vec() const { return v_; }

  bool in_octant(double slack) const;

 private:
  explicit StateS2(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

/// Skew-symmetric generator stored by its three free entries:
///
///       | 0   -m1  -m3 |
///   M = | m1   0   -m2 |
///       | m3   m2   0  |
struct SkewGenerator {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  Mat3 matrix() const;
  /// Vector w with M x = w cross x.
  Vec3 axis() const;
  /// Angular speed |w|.
  double rate() const;
};

SkewGenerator operator+(const SkewGenerator& a, const SkewGenerator& b);
SkewGenerator operator*(double s, const SkewGenerator& g);

class Rotation {
 public:
  Rotation() : m_(Mat3::identity()) {}
  explicit Rotation(const Mat3& m) : m_(m) {}

  const Mat3& matrix() const { return m_; }
  Rotation inverse() const { return Rotation(m_.transposed()); }
  Vec3 apply(const Vec3& v) const { return m_ * v; }
  /// Rotated state; re-normalizes away the last few ulps of drift.
  StateS2 apply(const StateS2& s) const;

  /// max |R^T R - I|.
  double orthogonality_defect() const;
  double determinant() const;

 private:
  Mat3 m_;
};

Rotation operator*(const Rotation& a, const Rotation& b);

/// Drift-free Hamiltonian of the real three-level system:
/// (2,1)-entry u1, (3,2)-entry alpha*u2, (3,1)-entry 0.
SkewGenerator generator(double u1, double u2, double alpha);

/// exp(t G) by the Rodrigues formula; series coefficients below
/// tol::rodrigues_series_angle.
Rotation rodrigues_exp(const SkewGenerator& g, double t);

/// Matrix commutator G1 G2 - G2 G1.
SkewGenerator bracket(const SkewGenerator& g1, const SkewGenerator& g2);

} // namespace qoct
