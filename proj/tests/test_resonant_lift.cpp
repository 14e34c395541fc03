#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qoct/errors.hpp"
#include "qoct/integrator.hpp"
#include "qoct/min_energy.hpp"
#include "qoct/resonant_lift.hpp"
#include "qoct/time_optimal.hpp"
#include "support.hpp"

using namespace qoct;
using std::numbers::pi;

namespace {
const LevelSpec kSpec{-1.0, 0.3, 0.7, 0.0, 0.0};
const ComplexState kSourceC{Complex(1), Complex(0), Complex(0)};
} // namespace

TEST_CASE("lifted control phases") {
  const LiftedControls a = lift_controls(constant_control(1, 0), {0.5, 0.5, 2.0, 0.0, 0.0});
  for (double t : {0.0, 1.0, 7.3}) CHECK(std::abs(a.f1(t) - Complex(1)) < 1e-15);

  const LiftedControls b = lift_controls(constant_control(1, 1), {0.0, 1.0, 3.0, pi / 2, 0.0});
  CHECK(std::abs(b.f1(pi) - std::polar(1.0, 3 * pi / 2)) < 1e-14);

  const ControlSignal u = as_control(min_time_law(0.5));
  const LiftedControls c = lift_controls(u, {-1.0, 0.3, 0.7, 1.1, -2.0});
  testing::Rng r(2);
  for (int i = 0; i < 50; ++i) {
    const double t = r.uniform(0, 3.7);
    CHECK(std::abs(std::abs(c.f1(t)) - std::abs(u.eval(t).u1)) < 1e-15);
    CHECK(std::abs(std::abs(c.f2(t)) - std::abs(u.eval(t).u2)) < 1e-15);
    const ControlValue back = recover_controls(c, {-1.0, 0.3, 0.7, 1.1, -2.0}, t);
    CHECK(std::abs(back.u1 - u.eval(t).u1) < 1e-14);
    CHECK(std::abs(back.u2 - u.eval(t).u2) < 1e-14);
  }
}

TEST_CASE("free evolution only changes phases") {
  const LiftedControls zero = lift_controls(constant_control(0, 0), kSpec);
  const ComplexState psi0{Complex(0.6, 0.0), Complex(0.0, 0.0), Complex(0.8, 0.0)};
  const ComplexTrajectory tr = simulate_complex(psi0, zero, kSpec, 1.0, 5.0, 1e-3, 100);
  for (const ComplexSample& s : tr) {
    CHECK(std::abs(std::norm(s.psi[0]) - 0.36) < 1e-12);
    CHECK(std::abs(std::norm(s.psi[2]) - 0.64) < 1e-12);
  }
  // The frame change maps psi3 to -psi3 when both phases vanish.
  const Trajectory back = interaction_picture(tr, kSpec);
  for (const Sample& s : back.samples()) CHECK(distance(s.state.vec(), {0.6, 0, -0.8}) < 1e-12);
}

TEST_CASE("lifted minimum-time controls transfer the population") {
  const ControlLaw law = min_time_law(1.0);
  const LiftReport r = lift_and_compare(as_control(law), 1.0, law.total_time(), kSpec, 1e-4, 100);
  CHECK(r.final_population >= 1 - 1e-6);
  CHECK(r.max_population_error < 1e-9);
  CHECK(std::abs(r.max_norm_drift) < 1e-9);

  const ControlLaw half = min_time_law(0.5);
  const LiftedControls f = lift_controls(as_control(half), kSpec);
  const ComplexTrajectory tr =
      simulate_complex(kSourceC, f, kSpec, 0.5, half.total_time(), 1e-4, 100);
  const Trajectory reduced = interaction_picture(tr, kSpec);
  for (const Sample& s : reduced.samples()) {
    const Vec3 exact = law_endpoint(StateS2::source(), [&] {
                         ControlLaw part{0.5, {}};
                         double left = s.t;
                         for (const Segment& g : half.segments) {
                           const double d = std::min(left, g.duration);
                           if (d > 0) part.segments.push_back({g.u1, g.u2, d});
                           left -= d;
                         }
                         return part;
                       }()).vec();
    CHECK(distance(s.state.vec(), exact) < 1e-6);
  }
}

TEST_CASE("lifted energy controls transfer the population") {
  const double alpha = 2.0;
  const double m = solve_m3(alpha, 1e-10);
  const double T = transfer_time(alpha, m);
  const LiftReport r =
      lift_and_compare(extremal_control(EnergyExtremal::make(alpha, m)), alpha, T, kSpec, 1e-4, 100);
  CHECK(r.final_population >= 1 - 1e-5);

  const double mi = 1 / std::sqrt(3.0);
  const LiftReport iso = lift_and_compare(extremal_control(EnergyExtremal::make(1.0, mi)), 1.0,
                                          std::sqrt(3.0) * pi / 2, kSpec, 1e-4, 100);
  REQUIRE(iso.complex_traj.size() == iso.reduced.size());
  const Trajectory back = interaction_picture(iso.complex_traj, kSpec);
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(distance(back.samples()[i].state.vec(), iso.reduced.samples()[i].state.vec()) < 1e-6);
}

TEST_CASE("population transfer does not depend on energies or phases") {
  testing::Rng r(12);
  const ControlLaw law = min_time_law(0.5);
  for (int i = 0; i < 5; ++i) {
    const LevelSpec s{r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(-pi, pi),
                      r.uniform(-pi, pi)};
    const LiftReport rep = lift_and_compare(as_control(law), 0.5, law.total_time(), s, 1e-4, 200);
    CHECK(rep.final_population >= 1 - 1e-6);
    CHECK(rep.max_population_error < 1e-6);
  }
}

TEST_CASE("wrong phases are detected") {
  const ControlLaw law = min_time_law(1.0);
  const LiftedControls f = lift_controls(as_control(law), kSpec);
  const ComplexTrajectory tr = simulate_complex(kSourceC, f, kSpec, 1.0, law.total_time(), 1e-3, 10);
  LevelSpec wrong = kSpec;
  wrong.xi1 = 1.0;
  CHECK_THROWS_AS(interaction_picture(tr, wrong), Error);
}
