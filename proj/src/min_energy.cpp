#include "qoct/min_energy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qoct/constants.hpp"
#include "qoct/elliptic.hpp"
#include "qoct/errors.hpp"
#include "qoct/oracle.hpp"
#include "qoct/time_optimal.hpp"

namespace qoct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDichotomy = 200;
constexpr double kCornerWindow = 1e-3;

double critical_m3(double alpha) { return std::sqrt((1.0 - alpha * alpha) / (alpha * alpha)); }

void require_m3(double m3_0) {
  if (!(m3_0 >= 0.0) || !std::isfinite(m3_0)) {
    std::ostringstream os;
    os << "m3(0) must be finite and >= 0, got " << m3_0;
    fail(ErrorCode::Domain, os.str());
  }
}

// Modulus of each elliptic regime; the complement is formed directly from
// differences so that it stays accurate as k approaches 1.
Modulus subcritical_modulus(double alpha, double m3) {
  const double c = critical_m3(alpha);
  const double kc2 = alpha * alpha * (c - m3) * (c + m3) / (1.0 - alpha * alpha);
  return Modulus::from_complement(std::min(std::sqrt(std::max(kc2, 0.0)), 1.0));
}

Modulus supercritical_modulus(double alpha, double m3) {
  const double c = alpha < 1.0 ? critical_m3(alpha) : 0.0;
  const double kc2 = ((m3 - c) / m3) * ((m3 + c) / m3);
  return Modulus::from_complement(std::min(std::sqrt(std::max(kc2, 0.0)), 1.0));
}

double above_one_rate(double alpha, double m3) {
  return std::sqrt(alpha * alpha * m3 * m3 + alpha * alpha - 1.0);
}

Modulus above_one_modulus(double alpha, double m3) {
  return Modulus::from_complement(std::min(alpha * m3 / above_one_rate(alpha, m3), 1.0));
}

double exit_horizon(double alpha) {
  return 10.0 * std::sqrt(3.0) * std::numbers::pi / 2.0 / std::min(alpha, 1.0);
}

} // namespace

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Zero: return "zero";
    case Regime::SubCritical: return "sub_critical";
    case Regime::Critical: return "critical";
    case Regime::SuperCritical: return "super_critical";
    case Regime::AlphaAboveOne: return "alpha_above_one";
  }
  return "unknown";
}

const char* to_string(ExitFace f) noexcept {
  switch (f) {
    case ExitFace::Psi1Face: return "psi1_face";
    case ExitFace::Psi2Face: return "psi2_face";
    case ExitFace::Target: return "target";
  }
  return "unknown";
}

Regime classify(double alpha, double m3_0) {
  require_alpha(alpha);
  require_m3(m3_0);
  if (m3_0 == 0.0) return Regime::Zero;
  if (alpha > 1.0 && !is_isotropic(alpha)) return Regime::AlphaAboveOne;
  if (is_isotropic(alpha)) return Regime::SuperCritical;
  const double c2 = (1.0 - alpha * alpha) / (alpha * alpha);
  const double gap = m3_0 * m3_0 - c2;
  if (std::abs(gap) <= tol::critical_window_rel * c2) return Regime::Critical;
  return gap < 0.0 ? Regime::SubCritical : Regime::SuperCritical;
}

EnergyExtremal EnergyExtremal::make(double alpha, double m3_0) {
  return {alpha, m3_0, classify(alpha, m3_0)};
}

double ExtremalSample::k1() const { return 0.5 * (v1 * v1 + v2 * v2 / (alpha * alpha)); }

double ExtremalSample::k2() const {
  return 0.5 * (v1 * v1 - alpha * alpha * m3 * m3 / (1.0 - alpha * alpha));
}

ExtremalSample controls_at(const EnergyExtremal& e, double t) {
  const double a = e.alpha;
  const double m = e.m3_0;
  switch (e.regime) {
    case Regime::Zero:
      return {t, 1.0, 0.0, 0.0, a};
    case Regime::SubCritical: {
      const Modulus mod = subcritical_modulus(a, m);
      const JacobiTriple j = jacobi(std::sqrt(1.0 - a * a) * t, mod);
      return {t, j.dn, a * mod.k() * j.sn, m * j.cn, a};
    }
    case Regime::Critical: {
      const double u = std::sqrt(1.0 - a * a) * t;
      const double sech = 1.0 / std::cosh(u);
      return {t, sech, a * std::tanh(u), m * sech, a};
    }
    case Regime::SuperCritical: {
      const JacobiTriple j = jacobi(a * m * t, supercritical_modulus(a, m));
      return {t, j.cn, a * j.sn, m * j.dn, a};
    }
    case Regime::AlphaAboveOne: {
      const Modulus mod = above_one_modulus(a, m);
      const JacobiDerived j = jacobi_derived(above_one_rate(a, m) * t, mod);
      return {t, j.cd, a * mod.kc() * j.sd, m * j.nd, a};
    }
  }
  fail(ErrorCode::Regime, "unknown regime");
}

ControlSignal extremal_control(const EnergyExtremal& e) {
  return {[e](double t) {
            const ExtremalSample s = controls_at(e, t);
            return ControlValue{s.u1(), s.u2()};
          },
          {}};
}

double transfer_time(double alpha, double m3_0) {
  const Regime r = classify(alpha, m3_0);
  if (r == Regime::SuperCritical)
    return complete_k(supercritical_modulus(alpha, m3_0)) / (alpha * m3_0);
  if (r == Regime::AlphaAboveOne)
    return complete_k(above_one_modulus(alpha, m3_0)) / above_one_rate(alpha, m3_0);
  std::ostringstream os;
  os << "v1 has no zero in the " << to_string(r) << " regime";
  fail(ErrorCode::Regime, os.str());
}

double half_period(const EnergyExtremal& e) {
  const double a = e.alpha;
  const double m = e.m3_0;
  switch (e.regime) {
    case Regime::SuperCritical:
      return 2.0 * complete_k(supercritical_modulus(a, m)) / (a * m);
    case Regime::SubCritical:
      return complete_k(subcritical_modulus(a, m)) / std::sqrt(1.0 - a * a);
    case Regime::AlphaAboveOne:
      return 2.0 * complete_k(above_one_modulus(a, m)) / above_one_rate(a, m);
    case Regime::Zero:
    case Regime::Critical:
      return kInf;
  }
  return kInf;
}

M3Bounds m3_bounds(double alpha) {
  require_alpha(alpha);
  if (alpha > 1.0 || is_isotropic(alpha)) return {0.0, 1.0 / std::sqrt(3.0)};
  return {critical_m3(alpha), std::sqrt(4.0 / (3.0 * alpha * alpha) - 1.0)};
}

ExitReport locate_exit(double alpha, double m3_0) {
  const EnergyExtremal e = EnergyExtremal::make(alpha, m3_0);
  const ExitEvent ev =
      first_exit(StateS2::source(), extremal_control(e), alpha, exit_horizon(alpha), 1e-2);
  double miss = distance(ev.state.vec(), StateS2::target().vec());
  if (ev.face == BoundaryFace::Psi1) {
    // Near the corner psi1 vanishes to high order, so rounding can trip the
    // psi1 face just before the target. The closest approach to (0,0,1) is
    // where psi2 vanishes; look for it a short way past the exit.
    const double t0 = ev.t;
    const ControlSignal tail{[e, t0](double t) {
                               const ExtremalSample s = controls_at(e, t0 + t);
                               return ControlValue{s.u1(), s.u2()};
                             },
                             {}};
    try {
      const ExitEvent ev2 = first_exit(ev.state, tail, alpha, kCornerWindow, 1e-4,
                                       FaceMask{false, true});
      miss = std::min(miss, distance(ev2.state.vec(), StateS2::target().vec()));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Timeout) throw;
    }
  }
  ExitFace face = ev.face == BoundaryFace::Psi1 ? ExitFace::Psi1Face : ExitFace::Psi2Face;
  if (miss < tol::target_ball) face = ExitFace::Target;
  return {face, ev.face, ev.t, ev.state, miss};
}

ExitFace exit_face(double alpha, double m3_0) { return locate_exit(alpha, m3_0).face; }

double solve_m3(double alpha, double tol) {
  require_alpha(alpha);
  if (!(tol > 0.0)) fail(ErrorCode::Domain, "dichotomy tolerance must be > 0");
  const M3Bounds b = m3_bounds(alpha);
  // The floor is exclusive and the solution can sit within a few ulps of it
  // for small alpha, so step off it by ulps rather than an absolute margin.
  double lo = b.lower > 0.0 ? b.lower * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())
                            : std::numeric_limits<double>::min();
  double hi = b.upper;

  const ExitReport rlo = locate_exit(alpha, lo);
  const ExitReport rhi = locate_exit(alpha, hi);
  if (!(rlo.crossed == BoundaryFace::Psi1 && rhi.crossed == BoundaryFace::Psi2)) {
    if (rhi.face == ExitFace::Target) return hi;
    if (rlo.face == ExitFace::Target) return lo;
    std::ostringstream os;
    os.precision(17);
    os << "m3 bounds [" << lo << ", " << hi << "] do not straddle the target for alpha="
       << alpha << " (exit faces " << (rlo.crossed == BoundaryFace::Psi1 ? "psi1" : "psi2")
       << ", " << (rhi.crossed == BoundaryFace::Psi1 ? "psi1" : "psi2") << ")";
    fail(ErrorCode::Bracket, os.str());
  }

  double miss_hi = rhi.miss;
  for (int i = 0; i < kMaxDichotomy; ++i) {
    if (hi - lo < tol && miss_hi < 10.0 * tol) break;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const ExitReport r = locate_exit(alpha, mid);
    // Psi1 exit: m3 too small.
    if (r.crossed == BoundaryFace::Psi1) {
      lo = mid;
    } else {
      hi = mid;
      miss_hi = r.miss;
    }
  }
  return hi;
}

double energy_cost(const EnergyExtremal& e, double T) {
  if (!(T >= 0.0)) fail(ErrorCode::Domain, "energy horizon must be >= 0");
  if (T == 0.0) return 0.0;
  return quadrature(
      [&e](double t) {
        const ExtremalSample s = controls_at(e, t);
        return s.v1 * s.v1 + s.v2 * s.v2 / (e.alpha * e.alpha);
      },
      0.0, T, 1e-11);
}

Trajectory integrate_extremal(const EnergyExtremal& e, double T, double h,
                              std::size_t stride) {
  Trajectory traj = integrate(StateS2::source(), extremal_control(e), e.alpha, T, h, stride);
  const bool has_k2 = !is_isotropic(e.alpha);
  for (Sample& s : traj.samples()) {
    const ExtremalSample c = controls_at(e, s.t);
    s.monitors.k1 = c.k1();
    if (has_k2) s.monitors.k2 = c.k2();
  }
  return traj;
}

} // namespace qoct
