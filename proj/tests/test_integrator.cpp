#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qoct/errors.hpp"
#include "qoct/integrator.hpp"
#include "qoct/min_energy.hpp"
#include "qoct/time_optimal.hpp"
#include "support.hpp"

using namespace qoct;
using std::numbers::pi;

namespace {
const StateS2 kSource = StateS2::source();

double endpoint_error(const ControlSignal& u, double alpha, double T, double h,
                      const Vec3& exact) {
  return distance(integrate(kSource, u, alpha, T, h, 1u << 30).back().state.vec(), exact);
}
} // namespace

TEST_CASE("plane rotation") {
  const Trajectory tr = integrate(kSource, constant_control(1, 0), 1.0, pi / 2, 1e-3, 100);
  CHECK(distance(tr.back().state.vec(), {0, 1, 0}) < 1e-10);
  CHECK(tr.back().t == pi / 2);
  CHECK(tr.front().t == 0.0);
}

TEST_CASE("replayed bang law agrees with exact composition") {
  for (double alpha : {0.5, 2.0}) {
    const ControlLaw law = min_time_law(alpha);
    const Trajectory tr = integrate(kSource, as_control(law), alpha, law.total_time(), 1e-4, 1000);
    CHECK(distance(tr.back().state.vec(), law_endpoint(kSource, law).vec()) < 1e-8);
  }
}

TEST_CASE("isotropic energy extremal reaches the target") {
  const double m = 1 / std::sqrt(3.0);
  const Trajectory tr =
      integrate(kSource, extremal_control(EnergyExtremal::make(1.0, m)), 1.0,
                std::sqrt(3.0) * pi / 2, 1e-3, 100);
  CHECK(distance(tr.back().state.vec(), StateS2::target().vec()) < 1e-6);
}

TEST_CASE("fourth-order convergence") {
  struct Case {
    ControlSignal u;
    double alpha;
    double T;
  };
  const Case cases[] = {
      {constant_control(1, 1), 0.5, 2.0},
      {constant_control(1, -0.3), 3.0, 2.0},
      {extremal_control(EnergyExtremal::make(0.8, 1.0)), 0.8, 2.0},
      {extremal_control(EnergyExtremal::make(2.0, 0.3)), 2.0, 2.0},
      {extremal_control(EnergyExtremal::make(0.5, 1.0)), 0.5, 2.0},
  };
  for (const Case& c : cases) {
    const Vec3 ref = integrate(kSource, c.u, c.alpha, c.T, 2e-4, 1u << 30).back().state.vec();
    const double e1 = endpoint_error(c.u, c.alpha, c.T, 0.1, ref);
    const double e2 = endpoint_error(c.u, c.alpha, c.T, 0.05, ref);
    CAPTURE(c.alpha);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
  }
}

TEST_CASE("renormalization and sampling") {
  const Trajectory tr = integrate(kSource, constant_control(1, 1), 2.0, 1.0, 0.03, 7);
  for (const Sample& s : tr.samples()) {
    CHECK(std::abs(norm(s.state.vec()) - 1) < 1e-15);
    CHECK(std::abs(s.monitors.norm_drift) < 1e-6);
  }
  CHECK(tr.back().t == 1.0);
  CHECK_THROWS_AS(integrate(kSource, constant_control(1, 1), 1.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(integrate(kSource, constant_control(1, 1), 1.0, -1.0, 0.1), Error);
}

TEST_CASE("steps straddling an undeclared jump are rejected") {
  ControlSignal jump{[](double t) { return t < 0.9 ? ControlValue{8, 0} : ControlValue{0, -8}; },
                     {}};
  CHECK_THROWS_AS(integrate(kSource, jump, 1.0, 2.0, 0.4), Error);
  jump.breakpoints = {0.9};
  CHECK_NOTHROW(integrate(kSource, jump, 1.0, 2.0, 0.01));
}

TEST_CASE("rk4_step matches the exponential to fifth order") {
  const SkewGenerator g = generator(0.7, -0.4, 1.5);
  const Vec3 x{0.6, 0.0, 0.8};
  for (double h : {0.1, 0.05}) {
    const Vec3 exact = testing::taylor_exp(h * g.matrix()) * x;
    const Vec3 step = rk4_step(x, constant_control(0.7, -0.4), 1.5, 0.0, h);
    CHECK(distance(exact, step) < 0.01 * std::pow(h, 5));
  }
}

TEST_CASE("integrate_rotation") {
  const ControlLaw law = min_time_law(2.0);
  const RotationPath p = integrate_rotation(Rotation(), as_control(law), 2.0, law.total_time(),
                                            1e-3, 50);
  CHECK(p.back().g.orthogonality_defect() < 1e-14);
  Rotation exact;
  for (const Segment& s : law.segments)
    exact = rodrigues_exp(generator(s.u1, s.u2, 2.0), s.duration) * exact;
  CHECK(max_abs_diff(p.back().g.matrix(), exact.matrix()) < 1e-10);
}

TEST_CASE("first_exit") {
  const ExitEvent a = first_exit(kSource, constant_control(1, 0), 1.0, 10.0, 1e-2);
  CHECK(a.face == BoundaryFace::Psi1);
  CHECK(std::abs(a.t - pi / 2) < 1e-10);
  CHECK(a.state.psi1() >= 0.0);

  const ExitEvent b =
      first_exit(kSource, extremal_control(EnergyExtremal::make(1.0, 0.9)), 1.0, 30.0, 1e-2);
  CHECK(b.face == BoundaryFace::Psi2);

  const double m = 1 / std::sqrt(3.0);
  const ExitEvent c =
      first_exit(kSource, extremal_control(EnergyExtremal::make(1.0, m)), 1.0, 30.0, 1e-2);
  CHECK(distance(c.state.vec(), StateS2::target().vec()) < 1e-4);

  CHECK_THROWS_AS(first_exit(kSource, constant_control(0, 1), 1.0, 5.0, 1e-2), Error);

  // Masking psi1 lets the arc run on to the psi2 face.
  const ExitEvent d =
      first_exit(kSource, constant_control(1, 0), 1.0, 10.0, 1e-2, FaceMask{false, true});
  CHECK(d.face == BoundaryFace::Psi2);
  CHECK(std::abs(d.t - pi) < 1e-10);
}
