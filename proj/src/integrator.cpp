#include "qoct/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

void Trajectory::push(const Sample& s) {
  if (!samples_.empty() && !(s.t > samples_.back().t)) {
    std::ostringstream os;
    os.precision(17);
    os << "trajectory sample at t=" << s.t << " does not follow t="
       << samples_.back().t;
    fail(ErrorCode::Domain, os.str());
  }
  samples_.push_back(s);
}

namespace {

Vec3 field(const Vec3& p, ControlValue u, double alpha) {
  const double a2 = alpha * u.u2;
  return {-u.u1 * p[1], u.u1 * p[0] - a2 * p[2], a2 * p[1]};
}

Mat3 field(const Mat3& g, ControlValue u, double alpha) {
  return generator(u.u1, u.u2, alpha).matrix() * g;
}

// Control just inside the step so that a breakpoint at t1 reads the left
// value of a right-continuous signal.
ControlValue eval_end(const ControlSignal& c, double t0, double t1) {
  return c.eval(std::nextafter(t1, t0));
}

// One step from t to t1; t1 is passed exactly so knots are never overshot.
template <class Y>
Y rk4(const Y& y, const ControlSignal& c, double alpha, double t, double t1) {
  const double h = t1 - t;
  const ControlValue u0 = c.eval(t);
  const ControlValue um = c.eval(t + 0.5 * h);
  const ControlValue u1 = eval_end(c, t, t1);
  const Y k1 = field(y, u0, alpha);
  const Y k2 = field(y + (0.5 * h) * k1, um, alpha);
  const Y k3 = field(y + (0.5 * h) * k2, um, alpha);
  const Y k4 = field(y + h * k3, u1, alpha);
  return y + (h / 6.0) * (k1 + (2.0 * k2) + (2.0 * k3) + k4);
}

Mat3 orthonormalize(const Mat3& m) {
  Vec3 c0{m(0, 0), m(1, 0), m(2, 0)};
  Vec3 c1{m(0, 1), m(1, 1), m(2, 1)};
  c0 = (1.0 / norm(c0)) * c0;
  c1 = c1 - dot(c0, c1) * c0;
  c1 = (1.0 / norm(c1)) * c1;
  const Vec3 c2 = cross(c0, c1);
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r(i, 0) = c0[i];
    r(i, 1) = c1[i];
    r(i, 2) = c2[i];
  }
  return r;
}

// Interval ends: 0, every breakpoint inside (0, T), T.
std::vector<double> knots(const ControlSignal& c, double T) {
  std::vector<double> k{0.0};
  std::vector<double> bp = c.breakpoints;
  std::sort(bp.begin(), bp.end());
  for (double b : bp)
    if (b > k.back() && b < T) k.push_back(b);
  if (T > 0.0) k.push_back(T);
  return k;
}

void check_step_args(double T, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    fail(ErrorCode::Domain, "integration step must be positive");
  if (!(T >= 0.0) || !std::isfinite(T))
    fail(ErrorCode::Domain, "integration horizon must be finite and >= 0");
}

// Step-doubling RK4 with Richardson extrapolation; fifth order locally.
struct DoubledStep {
  Vec3 y;
  double err;
};

DoubledStep doubled_step(const Vec3& y, const ControlSignal& c, double alpha,
                         double t, double t1) {
  const double mid = t + 0.5 * (t1 - t);
  const Vec3 full = rk4(y, c, alpha, t, t1);
  const Vec3 half = rk4(rk4(y, c, alpha, t, mid), c, alpha, mid, t1);
  const Vec3 diff = half - full;
  return {half + (1.0 / 15.0) * diff, norm(diff) / 15.0};
}


} // namespace

ControlSignal constant_control(double u1, double u2) {
  return {[u1, u2](double) { return ControlValue{u1, u2}; }, {}};
}

Vec3 rk4_step(const Vec3& psi, const ControlSignal& control, double alpha,
              double t, double h) {
  return rk4(psi, control, alpha, t, t + h);
}

Trajectory integrate(const StateS2& psi0, const ControlSignal& control,
                     double alpha, double T, double h, std::size_t stride) {
  check_step_args(T, h);
  stride = std::max<std::size_t>(stride, 1);
  Trajectory traj;
  const ControlValue c0 = control.eval(0.0);
  traj.push({0.0, psi0, c0.u1, c0.u2});

  const std::vector<double> k = knots(control, T);
  Vec3 y = psi0.vec();
  std::size_t step = 0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double len = k[i + 1] - k[i];
    const auto n = static_cast<std::size_t>(std::ceil(len / h - 1e-9));
    const double hs = len / static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t j = 0; j < std::max<std::size_t>(n, 1); ++j) {
      const bool last_of_interval = j + 1 == std::max<std::size_t>(n, 1);
      const double t = k[i] + hs * static_cast<double>(j);
      // Land exactly on the knot so the last stage reads the left control.
      const double tn = last_of_interval ? k[i + 1] : t + hs;
      y = rk4(y, control, alpha, t, tn);
      const double drift = norm(y) - 1.0;
      if (std::abs(drift) > tol::renormalization_limit) {
        std::ostringstream os;
        os << "renormalization of " << drift << " at t=" << t + hs
           << " exceeds the step limit";
        fail(ErrorCode::Step, os.str());
      }
      y = (1.0 / (1.0 + drift)) * y;
      ++step;
      const bool at_end = last_of_interval && i + 2 == k.size();
      if (step % stride == 0 || at_end) {
        const ControlValue u = at_end ? eval_end(control, t, tn) : control.eval(tn);
        Sample s{tn, StateS2::normalized(y), u.u1, u.u2};
        s.monitors.norm_drift = drift;
        traj.push(s);
      }
    }
  }
  return traj;
}

RotationPath integrate_rotation(const Rotation& g0, const ControlSignal& control,
                                double alpha, double T, double h,
                                std::size_t stride) {
  check_step_args(T, h);
  stride = std::max<std::size_t>(stride, 1);
  RotationPath path{{0.0, g0}};
  const std::vector<double> k = knots(control, T);
  Mat3 g = g0.matrix();
  std::size_t step = 0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double len = k[i + 1] - k[i];
    const std::size_t n = std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil(len / h - 1e-9)), 1);
    const double hs = len / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = k[i] + hs * static_cast<double>(j);
      const double tn = j + 1 == n ? k[i + 1] : t + hs;
      g = orthonormalize(rk4(g, control, alpha, t, tn));
      ++step;
      const bool at_end = j + 1 == n && i + 2 == k.size();
      if (step % stride == 0 || at_end)
        path.push_back({tn, Rotation(g)});
    }
  }
  return path;
}

ExitEvent first_exit(const StateS2& psi0, const ControlSignal& control,
                     double alpha, double horizon, double h, FaceMask mask) {
  check_step_args(horizon, h);
  auto outside = [mask](const Vec3& v) {
    return (mask.psi1 && v[0] < 0.0) || (mask.psi2 && v[1] < 0.0);
  };
  const std::vector<double> k = knots(control, horizon);
  std::size_t next_knot = 1;
  Vec3 y = psi0.vec();
  double t = 0.0;

  while (t < horizon) {
    while (next_knot < k.size() && k[next_knot] <= t) ++next_knot;
    const double limit = next_knot < k.size() ? k[next_knot] : horizon;
    double hs = std::min(h, limit - t);
    double t1 = hs == limit - t ? limit : t + hs;
    DoubledStep st = doubled_step(y, control, alpha, t, t1);
    while (st.err > tol::step_doubling_local && hs > 1e-12) {
      hs *= std::max(0.2, 0.9 * std::pow(tol::step_doubling_local / st.err, 0.2));
      t1 = t + hs;
      st = doubled_step(y, control, alpha, t, t1);
    }
    const Vec3 next = (1.0 / norm(st.y)) * st.y;

    if (outside(next)) {
      double lo = 0.0;
      double hi = hs;
      Vec3 y_lo = y;
      Vec3 y_hi = next;
      while (hi - lo > tol::exit_time) {
        const double mid = 0.5 * (lo + hi);
        Vec3 ym = doubled_step(y, control, alpha, t, t + mid).y;
        ym = (1.0 / norm(ym)) * ym;
        if (outside(ym)) {
          hi = mid;
          y_hi = ym;
        } else {
          lo = mid;
          y_lo = ym;
        }
      }
      BoundaryFace face = y_hi[0] < y_hi[1] ? BoundaryFace::Psi1 : BoundaryFace::Psi2;
      if (!mask.psi1) face = BoundaryFace::Psi2;
      if (!mask.psi2) face = BoundaryFace::Psi1;
      return {face, t + lo, StateS2::normalized(y_lo)};
    }

    y = next;
    t = t1;
    if (st.err > 0.0)
      h = hs * std::min(2.0, 0.9 * std::pow(tol::step_doubling_local / st.err, 0.2));
    else
      h = 2.0 * hs;
  }
  std::ostringstream os;
  os << "no boundary crossing before horizon " << horizon;
  fail(ErrorCode::Timeout, os.str());
}

} // namespace qoct
