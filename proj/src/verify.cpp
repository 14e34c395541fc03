#include "qoct/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "qoct/elliptic.hpp"
#include "qoct/errors.hpp"
#include "qoct/min_energy.hpp"
#include "qoct/oracle.hpp"
#include "qoct/resonant_lift.hpp"
#include "qoct/sweep.hpp"
#include "qoct/time_optimal.hpp"

namespace qoct {

namespace {

using std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  // Records a named measurement against its bound.
  void check(bool ok, const std::string& what, double value, double bound) {
    if (ok) return;
    passed = false;
    detail.precision(3);
    detail << what << "=" << value << " (bound " << bound << "); ";
  }
  void at_most(const std::string& what, double value, double bound) {
    check(value <= bound, what, value, bound);
  }
};

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()(double lo, double hi) {
    const double u = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 gen_;
};

const Vec3 kTarget{0.0, 0.0, 1.0};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

// First zero of v1 by scan and bisection on the closed form.
double first_zero_v1(const EnergyExtremal& e) {
  const double hp = half_period(e);
  const double span = std::isfinite(hp) ? hp : 100.0;
  const int n = 1000;
  double lo = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = span * i / n;
    if (controls_at(e, t).v1 <= 0.0) {
      double hi = t;
      while (hi - lo > 1e-14 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (controls_at(e, mid).v1 > 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    lo = t;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome c1_isotropic_time(bool) {
  Outcome o;
  const ControlLaw law = min_time_law(1.0);
  o.at_most("|T-pi/sqrt2|", std::abs(law.total_time() - pi / std::sqrt(2.0)), 1e-12);
  o.at_most("endpoint miss", distance(law_endpoint(StateS2::source(), law).vec(), kTarget), 1e-10);
  o.detail << "T=" << fmt(law.total_time());
  return o;
}

Outcome c2_nonisotropic_time(bool) {
  Outcome o;
  double worst_end = 0.0, worst_mid = 0.0;
  for (double a : {0.1, 0.25, 0.5, 2.0, 4.0, 10.0}) {
    const ControlLaw law = min_time_law(a);
    const Segment& s = law.segments.front();
    const Vec3 mid =
        rodrigues_exp(generator(s.u1, s.u2, a), s.duration).apply(StateS2::source().vec());
    const Vec3 expect = a < 1.0 ? Vec3{0.0, std::sqrt(1.0 - a * a), a}
                                : Vec3{1.0 / a, std::sqrt(1.0 - 1.0 / (a * a)), 0.0};
    worst_mid = std::max(worst_mid, distance(mid, expect));
    worst_end = std::max(worst_end,
                         distance(law_endpoint(StateS2::source(), law).vec(), kTarget));
  }
  o.at_most("endpoint miss", worst_end, 1e-10);
  o.at_most("switch point miss", worst_mid, 1e-10);
  o.detail << "max end " << fmt(worst_end) << ", max switch " << fmt(worst_mid);
  return o;
}

Outcome c3_symmetry(bool) {
  Outcome o;
  Uniform rng(3);
  double worst_t = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = rng(0.0, 1.0);
    worst_t = std::max(worst_t, std::abs(min_time_law(1.0 / a).total_time() -
                                         a * min_time_law(a).total_time()));
  }
  o.at_most("time symmetry", worst_t, 1e-12);
  double worst_e = 0.0;
  for (double a : {0.2, 0.5, 0.8}) {
    const double t = transfer_time(a, solve_m3(a, 1e-10));
    const double ti = transfer_time(1.0 / a, solve_m3(1.0 / a, 1e-10));
    worst_e = std::max(worst_e, std::abs(ti - a * t));
  }
  o.at_most("energy symmetry", worst_e, 1e-6);
  o.detail << "time " << fmt(worst_t) << ", energy " << fmt(worst_e);
  return o;
}

Outcome c4_isotropic_energy(bool) {
  Outcome o;
  const double m = solve_m3(1.0, 1e-10);
  const double t = transfer_time(1.0, 1.0 / std::sqrt(3.0));
  o.at_most("|m3-1/sqrt3|", std::abs(m - 1.0 / std::sqrt(3.0)), 1e-8);
  o.at_most("|T-sqrt3 pi/2|", std::abs(t - std::sqrt(3.0) * pi / 2.0), 1e-10);
  o.detail << "m3=" << fmt(m) << ", T=" << fmt(t);
  return o;
}

Outcome c5_nonisotropic_energy(bool fast) {
  Outcome o;
  for (double a : {0.2, 0.5, 2.0, 5.0}) {
    const double m = solve_m3(a, 1e-10);
    const M3Bounds b = m3_bounds(a);
    o.check(m > b.lower && m < b.upper, "m3 outside bounds at alpha " + fmt(a), m, b.upper);
    const double t = transfer_time(a, m);
    const EnergyExtremal e = EnergyExtremal::make(a, m);
    const Trajectory tr = integrate_extremal(e, t, fast ? 2e-3 : 5e-4);
    const double miss = distance(tr.back().state.vec(), kTarget);
    o.at_most("endpoint miss at alpha " + fmt(a), miss, 1e-6);
    const double tz = first_zero_v1(e);
    o.at_most("|T - zero(v1)| at alpha " + fmt(a), std::abs(t - tz), 1e-7);
    o.detail << "a=" << a << ": m3=" << fmt(m) << " miss=" << fmt(miss) << "; ";
  }
  return o;
}

Outcome c6_conservation(bool) {
  Outcome o;
  Uniform rng(6);
  double w1 = 0.0, w2 = 0.0;
  for (int i = 0; i < 20; ++i) {
    double a;
    do a = std::exp(rng(std::log(0.1), std::log(10.0)));
    while (std::abs(a - 1.0) < 0.02);
    const double m = rng(0.0, 2.0 * m3_bounds(a).upper);
    const EnergyExtremal e = EnergyExtremal::make(a, m);
    const double span = std::min(half_period(e), 20.0);
    double k2min = std::numeric_limits<double>::infinity(), k2max = -k2min;
    for (int j = 0; j < 1000; ++j) {
      const ExtremalSample s = controls_at(e, span * j / 999.0);
      w1 = std::max(w1, std::abs(s.k1() - 0.5));
      k2min = std::min(k2min, s.k2());
      k2max = std::max(k2max, s.k2());
    }
    w2 = std::max(w2, k2max - k2min);
  }
  o.at_most("|K1-1/2|", w1, 1e-10);
  o.at_most("K2 spread", w2, 1e-9);
  o.detail << "K1 " << fmt(w1) << ", K2 " << fmt(w2);
  return o;
}

Outcome c7_ode_residuals(bool) {
  Outcome o;
  const double h = 1e-6;
  const struct {
    double a, m;
    Regime r;
  } cases[] = {{0.5, 0.0, Regime::Zero},
               {0.5, 1.0, Regime::SubCritical},
               {0.5, std::sqrt(3.0), Regime::Critical},
               {0.8, 1.0, Regime::SuperCritical},
               {2.0, 0.3, Regime::AlphaAboveOne}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const EnergyExtremal e = EnergyExtremal::make(c.a, c.m);
    o.check(e.regime == c.r, std::string("regime of case ") + to_string(c.r), 0, 0);
    const double q = (1.0 - c.a * c.a) / (c.a * c.a);
    for (int j = 1; j <= 50; ++j) {
      const double t = 0.1 * j;
      const ExtremalSample s = controls_at(e, t);
      const ExtremalSample p = controls_at(e, t + h);
      const ExtremalSample n = controls_at(e, t - h);
      worst = std::max({worst, std::abs((p.v1 - n.v1) / (2 * h) + s.m3 * s.v2),
                        std::abs((p.v2 - n.v2) / (2 * h) - c.a * c.a * s.m3 * s.v1),
                        std::abs((p.m3 - n.m3) / (2 * h) + q * s.v1 * s.v2)});
    }
  }
  o.at_most("extremal residual", worst, 1e-6);

  Uniform rng(7);
  double wp = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double u1 = rng(-1, 1), u2 = rng(-1, 1), a = rng(0.1, 5), t = rng(0, 5);
    const Vec3 phi0{rng(-1, 1), rng(-1, 1), rng(-1, 1)};
    const Vec3 f = switching_propagator(u1, u2, a, t) * phi0;
    const Vec3 d = (1.0 / (2 * h)) * (switching_propagator(u1, u2, a, t + h) * phi0 -
                                      switching_propagator(u1, u2, a, t - h) * phi0);
    const Vec3 rhs{-u2 * f[2], u1 * f[2], a * a * u2 * f[0] - u1 * f[1]};
    wp = std::max(wp, distance(d, rhs));
  }
  o.at_most("switching residual", wp, 1e-6);
  o.detail << "extremal " << fmt(worst) << ", switching " << fmt(wp);
  return o;
}

Outcome c8_elliptic(bool fast) {
  Outcome o;
  Uniform rng(8);
  double w = 0.0;
  const int n = fast ? 1000 : 10000;
  for (int i = 0; i < n; ++i) {
    const double u = rng(-10, 10), k = rng(0, 0.999);
    const JacobiTriple j = jacobi(u, k);
    w = std::max({w, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0),
                  std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0)});
  }
  o.at_most("identity residual", w, 1e-11);
  double wk = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const double q = quadrature(
        [k](double s) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(s) * std::sin(s)); }, 0.0,
        pi / 2, 1e-13);
    wk = std::max(wk, std::abs(q - complete_k(k)));
  }
  o.at_most("K vs quadrature", wk, 1e-10);
  bool exact = true;
  for (double u : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
    const JacobiTriple z = jacobi(u, 0.0), one = jacobi(u, 1.0);
    exact = exact && z.sn == std::sin(u) && z.cn == std::cos(u) && z.dn == 1.0 &&
            one.sn == std::tanh(u) && one.cn == 1.0 / std::cosh(u) && one.dn == one.cn;
  }
  o.check(exact, "degenerate closed forms", 0, 0);
  o.detail << "identities " << fmt(w) << ", K " << fmt(wk);
  return o;
}

// u1 never rises, u2 never falls; zero components only on their loci.
void check_law(Outcome& o, const ControlLaw& law, double& worst_locus) {
  for (std::size_t i = 1; i < law.segments.size(); ++i) {
    const Segment& p = law.segments[i - 1];
    const Segment& s = law.segments[i];
    o.check(s.u1 <= p.u1, "u1 switched upward", s.u1, p.u1);
    o.check(s.u2 >= p.u2, "u2 switched downward", s.u2, p.u2);
  }
  const Trajectory tr = propagate_law(StateS2::source(), law, 0.01);
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const Sample& s = tr.samples()[i];
    for (const Sample* x : {&s, &tr.samples()[i + 1]}) {
      if (s.u1 == 0.0) worst_locus = std::max(worst_locus, std::abs(x->state.psi1()));
      if (s.u2 == 0.0) worst_locus = std::max(worst_locus, std::abs(x->state.psi3()));
    }
  }
}

Outcome c9_switching(bool fast) {
  Outcome o;
  double worst = 0.0;
  std::size_t laws = 0;
  Uniform rng(9);
  for (double a : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
    check_law(o, min_time_law(a), worst);
    ++laws;
    for (const SynthesisExtremal& x : synthesis_extremals(a, fast ? 12 : 60)) {
      check_law(o, x.law, worst);
      ++laws;
    }
    for (int i = 0; i < (fast ? 5 : 20); ++i) {
      const StateS2 q = StateS2::normalized({rng(0, 1), rng(0.01, 1), rng(0, 1)});
      check_law(o, synthesis_law(a, q), worst);
      ++laws;
    }
  }
  o.at_most("singular arc off locus", worst, 1e-9);
  o.detail << laws << " laws, locus " << fmt(worst);
  return o;
}

Outcome c10_oracle(bool) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (double a : {0.5, 1.0, 2.0}) {
    const SearchResult r = sample_search_min_time(a, 10000, 5, 20240501);
    const double cf = min_time_law(a).total_time();
    o.check(r.best_time >= cf - 5e-3, "oracle beat closed form at alpha " + fmt(a), r.best_time,
            cf - 5e-3);
    o.detail << "a=" << a << ": best " << fmt(r.best_time) << " vs " << fmt(cf) << " ("
             << r.hits << " hits); ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.at_most("runtime s", secs, 60.0);
  return o;
}

Outcome c11_lift(bool fast) {
  Outcome o;
  const LevelSpec spec{-1.0, 0.3, 0.7, 0.0, 0.0};
  const double h = fast ? 1e-3 : 1e-4;
  for (double a : {0.5, 1.0, 2.0}) {
    const ControlLaw law = min_time_law(a);
    const LiftReport rt = lift_and_compare(as_control(law), a, law.total_time(), spec, h);
    const double m = solve_m3(a, 1e-10);
    const LiftReport re =
        lift_and_compare(extremal_control(EnergyExtremal::make(a, m)), a, transfer_time(a, m),
                         spec, h);
    for (const auto* r : {&rt, &re}) {
      const std::string tag = (r == &rt ? "time" : "energy") + std::string(" alpha ") + fmt(a);
      o.check(r->final_population >= 1.0 - 1e-5, "population " + tag, r->final_population,
              1.0 - 1e-5);
      o.at_most("population mismatch " + tag, r->max_population_error, 1e-5);
    }
    o.detail << "a=" << a << ": 1-pop " << fmt(1.0 - std::min(rt.final_population, re.final_population))
             << "; ";
  }
  return o;
}

Outcome c12_figures(bool fast) {
  Outcome o;
  const std::vector<AlphaPoint> pts = sweep_alpha(0.1, 10.0, fast ? 15 : 40, 1e-10);
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    o.check(std::isfinite(pts[i].m3_0) && std::isfinite(pts[i].transfer_time),
            "non-finite sweep value", pts[i].alpha, 0);
    if (i > 0) {
      const double dt = pts[i - 1].transfer_time - pts[i].transfer_time;
      o.check(dt > 0.0, "transfer time not decreasing at alpha " + fmt(pts[i].alpha), dt, 0);
      o.check(pts[i].m3_0 < pts[i - 1].m3_0, "m3 not decreasing at alpha " + fmt(pts[i].alpha),
              pts[i].m3_0, pts[i - 1].m3_0);
      d.push_back(dt);
    }
  }
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double local = std::numeric_limits<double>::infinity();
    if (i > 0) local = std::min(local, d[i - 1]);
    if (i + 1 < d.size()) local = std::min(local, d[i + 1]);
    worst_ratio = std::max(worst_ratio, d[i] / local);
  }
  o.at_most("jump / local step", worst_ratio, 10.0);

  double lowest = 0.0;
  std::size_t n_traj = 0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (const auto& sweep : {sweep_synthesis_time(a, fast ? 12 : 30, 0.01),
                              sweep_synthesis_energy(a, fast ? 6 : 15, 0.01)}) {
      for (const ParamTrajectory& p : sweep) {
        ++n_traj;
        for (const Sample& s : p.traj.samples())
          lowest = std::min({lowest, s.state.psi1(), s.state.psi2(), s.state.psi3()});
      }
    }
  }
  o.check(lowest >= -1e-9, "component below octant", lowest, -1e-9);
  o.detail << pts.size() << " alphas, max jump ratio " << fmt(worst_ratio) << "; " << n_traj
           << " trajectories, min component " << fmt(lowest);
  return o;
}

} // namespace

int run_acceptance(bool fast, const CriterionCallback& report) {
  using Fn = Outcome (*)(bool);
  const struct {
    const char* name;
    Fn fn;
  } suite[] = {
      {"minimum time, isotropic", c1_isotropic_time},
      {"minimum time, nonisotropic", c2_nonisotropic_time},
      {"time and energy symmetry under alpha -> 1/alpha", c3_symmetry},
      {"minimum energy, isotropic", c4_isotropic_energy},
      {"minimum energy, nonisotropic dichotomy", c5_nonisotropic_energy},
      {"conserved quantities K1, K2", c6_conservation},
      {"closed-form ODE residuals", c7_ode_residuals},
      {"elliptic function suite", c8_elliptic},
      {"switching rules and singular loci", c9_switching},
      {"brute-force optimality certificate", c10_oracle},
      {"resonant lift population transfer", c11_lift},
      {"figure data properties", c12_figures},
  };
  int failed = 0;
  int id = 0;
  for (const auto& c : suite) {
    ++id;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{id, c.name, false, "", 0.0};
    try {
      Outcome o = c.fn(fast);
      r.passed = o.passed;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.passed) ++failed;
    if (report) report(r);
  }
  return failed;
}

} // namespace qoct
