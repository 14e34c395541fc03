#pragma once
// Independent reference computations shared by the unit tests.

#include <cmath>
#include <cstdint>
#include <functional>

#include "qoct/linalg.hpp"

namespace testing {

// exp(M) by scaling and squaring over a 30-term Taylor sum.
inline qoct::Mat3 taylor_exp(const qoct::Mat3& m) {
  double mx = 0.0;
  for (double x : m.a) mx = std::max(mx, std::abs(x));
  int s = 0;
  while (mx > 0.5) {
    mx *= 0.5;
    ++s;
  }
  const qoct::Mat3 a = std::ldexp(1.0, -s) * m;
  qoct::Mat3 sum = qoct::Mat3::identity();
  qoct::Mat3 term = qoct::Mat3::identity();
  for (int n = 1; n <= 30; ++n) {
    term = (1.0 / n) * (term * a);
    sum = sum + term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

// Plain bisection on a sign change of f over [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double width = 1e-15) {
  double fa = f(a);
  while (b - a > width) {
    const double c = 0.5 * (a + b);
    if (c <= a || c >= b) break;
    const double fc = f(c);
    if ((fc > 0) == (fa > 0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

// First sign change of f on a uniform scan of [a, b], refined by bisection.
inline double first_zero(const std::function<double(double)>& f, double a, double b,
                         int n = 4000) {
  double prev = f(a);
  const double step = (b - a) / n;
  for (int i = 1; i <= n; ++i) {
    const double t = a + i * step;
    const double cur = f(t);
    if ((cur > 0) != (prev > 0)) return bisect(f, t - step, t);
    prev = cur;
  }
  return NAN;
}

// Small deterministic generator for test inputs (not the oracle's).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  double uniform(double lo, double hi) {
    s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + (hi - lo) * static_cast<double>(s_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_;
};

inline bool close(const qoct::Vec3& a, const qoct::Vec3& b, double eps) {
  return qoct::distance(a, b) <= eps;
}

} // namespace testing

namespace testing {

// K(k) by the trapezoid rule; the integrand is smooth and periodic, so the
// rule converges geometrically.
inline double k_trapezoid(double k, int n = 4000) {
  const double h = (M_PI / 2) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = std::sin(i * h);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w / std::sqrt(1.0 - k * k * s * s);
  }
  return sum * h;
}

} // namespace testing
