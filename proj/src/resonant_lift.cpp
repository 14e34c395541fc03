#include "qoct/resonant_lift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

namespace {

using std::numbers::pi;

ComplexState operator+(const ComplexState& a, const ComplexState& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

ComplexState operator*(Complex s, const ComplexState& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

double norm(const ComplexState& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// psi' = -i H psi.
ComplexState rhs(const ComplexState& p, Complex f1, Complex f2, const LevelSpec& s,
                 double alpha) {
  const Complex mi(0.0, -1.0);
  const Complex g2 = alpha * f2;
  return {mi * (s.e1 * p[0] + f1 * p[1]),
          mi * (std::conj(f1) * p[0] + s.e2 * p[1] + g2 * p[2]),
          mi * (std::conj(g2) * p[1] + s.e3 * p[2])};
}

// Diagonal of V.
std::array<Complex, 3> phases(const LevelSpec& s) {
  return {Complex(1.0, 0.0), std::polar(1.0, -pi / 2 - s.xi1),
          std::polar(1.0, -pi - s.xi1 - s.xi2)};
}

} // namespace

LiftedControls lift_controls(const ControlSignal& u, const LevelSpec& spec) {
  auto ev = u.eval;
  const double w1 = spec.e2 - spec.e1;
  const double w2 = spec.e3 - spec.e2;
  const double x1 = spec.xi1;
  const double x2 = spec.xi2;
  return {[ev, w1, x1](double t) { return ev(t).u1 * std::polar(1.0, w1 * t + x1); },
          [ev, w2, x2](double t) { return ev(t).u2 * std::polar(1.0, w2 * t + x2); },
          u.breakpoints};
}

ControlValue recover_controls(const LiftedControls& f, const LevelSpec& spec, double t) {
  const Complex r1 = f.f1(t) * std::polar(1.0, -((spec.e2 - spec.e1) * t + spec.xi1));
  const Complex r2 = f.f2(t) * std::polar(1.0, -((spec.e3 - spec.e2) * t + spec.xi2));
  return {r1.real(), r2.real()};
}

ComplexTrajectory simulate_complex(const ComplexState& psi0, const LiftedControls& f,
                                   const LevelSpec& spec, double alpha, double T, double h,
                                   std::size_t stride) {
  if (!(h > 0.0)) fail(ErrorCode::Domain, "integration step must be positive");
  if (!(T >= 0.0) || !std::isfinite(T))
    fail(ErrorCode::Domain, "integration horizon must be finite and >= 0");
  stride = std::max<std::size_t>(stride, 1);

  std::vector<double> knots{0.0};
  std::vector<double> bp = f.breakpoints;
  std::sort(bp.begin(), bp.end());
  for (double b : bp)
    if (b > knots.back() && b < T) knots.push_back(b);
  if (T > 0.0) knots.push_back(T);

  ComplexTrajectory out{{0.0, psi0, 0.0}};
  ComplexState y = psi0;
  std::size_t step = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double len = knots[i + 1] - knots[i];
    const std::size_t n =
        std::max<std::size_t>(static_cast<std::size_t>(std::ceil(len / h - 1e-9)), 1);
    const double hs = len / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = knots[i] + hs * static_cast<double>(j);
      const double tn = j + 1 == n ? knots[i + 1] : t + hs;
      const double te = std::nextafter(tn, t);
      const double hj = tn - t;
      const Complex a1 = f.f1(t), a2 = f.f2(t);
      const Complex m1 = f.f1(t + 0.5 * hj), m2 = f.f2(t + 0.5 * hj);
      const Complex b1 = f.f1(te), b2 = f.f2(te);
      const ComplexState k1 = rhs(y, a1, a2, spec, alpha);
      const ComplexState k2 = rhs(y + Complex(0.5 * hj) * k1, m1, m2, spec, alpha);
      const ComplexState k3 = rhs(y + Complex(0.5 * hj) * k2, m1, m2, spec, alpha);
      const ComplexState k4 = rhs(y + Complex(hj) * k3, b1, b2, spec, alpha);
      y = y + Complex(hj / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);
      const double drift = norm(y) - 1.0;
      if (std::abs(drift) > tol::renormalization_limit) {
        std::ostringstream os;
        os << "complex renormalization of " << drift << " exceeds the step limit";
        fail(ErrorCode::Step, os.str());
      }
      y = Complex(1.0 / (1.0 + drift)) * y;
      ++step;
      const bool at_end = j + 1 == n && i + 2 == knots.size();
      if (step % stride == 0 || at_end)
        out.push_back({tn, y, drift});
    }
  }
  return out;
}

Trajectory interaction_picture(const ComplexTrajectory& traj, const LevelSpec& spec) {
  const std::array<Complex, 3> v = phases(spec);
  const std::array<double, 3> e{spec.e1, spec.e2, spec.e3};
  Trajectory out;
  for (const ComplexSample& s : traj) {
    Vec3 r{};
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex c = s.psi[j] * std::polar(1.0, e[j] * s.t) / v[j];
      if (std::abs(c.imag()) > tol::lift_imaginary) {
        std::ostringstream os;
        os << "imaginary residue " << c.imag() << " in component " << j + 1 << " at t=" << s.t
           << ": controls are not resonant with the level spec";
        fail(ErrorCode::Consistency, os.str());
      }
      r[j] = c.real();
    }
    out.push({s.t, StateS2::normalized(r), 0.0, 0.0});
  }
  return out;
}

LiftReport lift_and_compare(const ControlSignal& u, double alpha, double T,
                            const LevelSpec& spec, double h, std::size_t stride) {
  const LiftedControls f = lift_controls(u, spec);
  LiftReport rep;
  rep.complex_traj = simulate_complex({Complex(1.0), Complex(0.0), Complex(0.0)}, f, spec,
                                      alpha, T, h, stride);
  rep.reduced = integrate(StateS2::source(), u, alpha, T, h, stride);
  rep.final_population = std::norm(rep.complex_traj.back().psi[2]);
  rep.max_population_error = 0.0;
  rep.max_norm_drift = 0.0;
  const auto& real = rep.reduced.samples();
  const std::size_t n = std::min(real.size(), rep.complex_traj.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexSample& c = rep.complex_traj[i];
    rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(c.norm_drift));
    for (std::size_t j = 0; j < 3; ++j) {
      const double pr = real[i].state[j] * real[i].state[j];
      rep.max_population_error =
          std::max(rep.max_population_error, std::abs(std::norm(c.psi[j]) - pr));
    }
  }
  return rep;
}

} // namespace qoct
