#include "qoct/linalg.hpp"

#include <cmath>
#include <sstream>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

Mat3 Mat3::identity() {
  Mat3 m;
  m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
  return m;
}

Mat3 Mat3::transposed() const {
  Mat3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

Mat3 operator*(double s, const Mat3& x) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = s * x.a[i];
  return r;
}

Vec3 operator*(const Mat3& x, const Vec3& v) {
  return {x(0, 0) * v[0] + x(0, 1) * v[1] + x(0, 2) * v[2],
          x(1, 0) * v[0] + x(1, 1) * v[1] + x(1, 2) * v[2],
          x(2, 0) * v[0] + x(2, 1) * v[1] + x(2, 2) * v[2]};
}

double max_abs_diff(const Mat3& x, const Mat3& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < 9; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

StateS2 StateS2::from(const Vec3& v) {
  const double n = norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::structural) {
    std::ostringstream os;
    os.precision(17);
    os << "state (" << v[0] << ", " << v[1] << ", " << v[2]
       << ") is not a unit vector (norm " << n << ")";
    fail(ErrorCode::Domain, os.str());
  }
  return StateS2(v);
}

StateS2 StateS2::octant(const Vec3& v) {
  StateS2 s = from(v);
  if (!s.in_octant(tol::octant))
    fail(ErrorCode::Domain, "state lies outside the positive octant");
  return s;
}

StateS2 StateS2::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!std::isfinite(n) || n == 0.0)
    fail(ErrorCode::Domain, "cannot normalize a zero or non-finite vector");
  return StateS2((1.0 / n) * v);
}

bool StateS2::in_octant(double slack) const {
  return v_[0] >= -slack && v_[1] >= -slack && v_[2] >= -slack;
}

Mat3 SkewGenerator::matrix() const {
  Mat3 m;
  m(0, 1) = -m1;
  m(1, 0) = m1;
  m(1, 2) = -m2;
  m(2, 1) = m2;
  m(0, 2) = -m3;
  m(2, 0) = m3;
  return m;
}

Vec3 SkewGenerator::axis() const { return {m2, -m3, m1}; }

double SkewGenerator::rate() const { return norm(axis()); }

SkewGenerator operator+(const SkewGenerator& a, const SkewGenerator& b) {
  return {a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3};
}

SkewGenerator operator*(double s, const SkewGenerator& g) {
  return {s * g.m1, s * g.m2, s * g.m3};
}

StateS2 Rotation::apply(const StateS2& s) const {
  return StateS2::normalized(m_ * s.vec());
}

double Rotation::orthogonality_defect() const {
  return max_abs_diff(m_.transposed() * m_, Mat3::identity());
}

double Rotation::determinant() const {
  const Mat3& m = m_;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Rotation operator*(const Rotation& a, const Rotation& b) {
  return Rotation(a.matrix() * b.matrix());
}

SkewGenerator generator(double u1, double u2, double alpha) {
  return {u1, alpha * u2, 0.0};
}

Rotation rodrigues_exp(const SkewGenerator& g, double t) {
  const Mat3 k = g.matrix();
  const double theta = std::abs(t) * g.rate();
  double a;  // sin(theta)/theta
  double b;  // (1 - cos(theta))/theta^2
  if (theta < tol::rodrigues_series_angle) {
    const double th2 = theta * theta;
    a = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    // 1 - cos = 2 sin^2(theta/2) avoids cancellation for moderate angles.
    const double s = std::sin(0.5 * theta);
    b = 2.0 * s * s / (theta * theta);
  }
  const Mat3 tk = t * k;
  return Rotation(Mat3::identity() + a * tk + b * (tk * tk));
}

SkewGenerator bracket(const SkewGenerator& g1, const SkewGenerator& g2) {
  // [W(a), W(b)] = W(a x b) for the hat map W.
  const Vec3 w = cross(g1.axis(), g2.axis());
  return {w[2], w[0], -w[1]};
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NoSolution: return "no-solution";
    case ErrorCode::Regime: return "regime";
    case ErrorCode::Bracket: return "bracket";
    case ErrorCode::Timeout: return "timeout";
    case ErrorCode::Step: return "step";
    case ErrorCode::Consistency: return "consistency";
    case ErrorCode::Depth: return "depth";
  }
  return "unknown";
}

} // namespace qoct
