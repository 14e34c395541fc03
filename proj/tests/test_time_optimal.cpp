#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qoct/errors.hpp"
#include "qoct/time_optimal.hpp"
#include "support.hpp"

using namespace qoct;
using std::numbers::pi;

namespace {
const StateS2 kSource = StateS2::source();
const StateS2 kTarget = StateS2::target();

// Plain composition of constant arcs, kept apart from law_endpoint.
Vec3 compose(const ControlLaw& law) {
  Vec3 x{1, 0, 0};
  for (const Segment& s : law.segments)
    x = testing::taylor_exp(s.duration * generator(s.u1, s.u2, law.alpha).matrix()) * x;
  return x;
}
} // namespace

TEST_CASE("boundary functions") {
  const StateS2 a = StateS2::from({1, 0, 0});
  CHECK(delta_a(a, 2) == 0.0);
  CHECK(delta_b1(a, 2) == 2.0);
  CHECK(delta_b2(a, 2) == 0.0);
  const StateS2 b = StateS2::from({0, 1, 0});
  CHECK(delta_a(b, 1) == 1.0);
  CHECK(delta_b1(b, 1) == 0.0);
  CHECK(delta_b2(b, 1) == 0.0);
  const StateS2 c = StateS2::from({0, 0, 1});
  CHECK(delta_a(c, 0.5) == 0.0);
  CHECK(delta_b1(c, 0.5) == 0.0);
  CHECK(delta_b2(c, 0.5) == -0.25);
}

TEST_CASE("switching functions") {
  const double r = std::sqrt(0.5);
  CHECK(f1(StateS2::from({r, r, 0})) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(f1(StateS2::from({0, 1, 0})) == 0.0);
  CHECK(f2(StateS2::from({0, 1, 0}), 3) == 0.0);
  CHECK(f2(StateS2::from({0, r, r}), 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(f1(kTarget), Error);
}

TEST_CASE("switching propagator") {
  for (double t : {0.0, 0.7, 2.5}) {
    const Mat3 r = switching_propagator(1, 0, 3.0, t);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(r(0, 1)) + std::abs(r(0, 2)) + std::abs(r(1, 0)) + std::abs(r(2, 0)) < 1e-15);
    CHECK(r(1, 1) == doctest::Approx(std::cos(t)).epsilon(1e-14));
    CHECK(r(2, 2) == doctest::Approx(std::cos(t)).epsilon(1e-14));
    CHECK(std::abs(r(1, 2) - std::sin(t)) < 1e-14);
    CHECK(std::abs(r(2, 1) + std::sin(t)) < 1e-14);
  }
  CHECK(max_abs_diff(switching_propagator(0.3, -0.8, 1.7, 0.0), Mat3::identity()) == 0.0);
  CHECK_THROWS_AS(switching_propagator(0, 0, 1, 1), Error);

  testing::Rng rng(21);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const double u1 = rng.uniform(-1, 1), u2 = rng.uniform(-1, 1), a = rng.uniform(0.1, 5);
    const double t = rng.uniform(0, 5);
    const Vec3 p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 f = switching_propagator(u1, u2, a, t) * p;
    const Vec3 d = (1.0 / (2 * h)) * (switching_propagator(u1, u2, a, t + h) * p -
                                      switching_propagator(u1, u2, a, t - h) * p);
    const Vec3 rhs{-u2 * f[2], u1 * f[2], a * a * u2 * f[0] - u1 * f[1]};
    CHECK(distance(d, rhs) < 1e-6);
    // Exact exponential of the constant coefficient matrix.
    Mat3 A;
    A(0, 2) = -u2;
    A(1, 2) = u1;
    A(2, 0) = a * a * u2;
    A(2, 1) = -u1;
    CHECK(max_abs_diff(switching_propagator(u1, u2, a, t), testing::taylor_exp(t * A)) < 1e-12);
  }
}

TEST_CASE("t_alpha") {
  CHECK(t_alpha(1.0) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(t_alpha(0.5) == doctest::Approx(std::acos(-0.25) / std::sqrt(1.25)).epsilon(1e-15));
  CHECK(t_alpha(2.0) == doctest::Approx(std::acos(-0.25) / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("min_time_law") {
  const ControlLaw a = min_time_law(0.5);
  REQUIRE(a.segments.size() == 2);
  CHECK(a.total_time() == doctest::Approx(3.725362).epsilon(1e-6));
  CHECK(a.segments[0].u1 == 1.0);
  CHECK(a.segments[0].u2 == 1.0);
  CHECK(a.segments[1].u1 == 0.0);
  CHECK(a.segments[1].u2 == 1.0);
  ControlLaw first = a;
  first.segments.resize(1);
  CHECK(testing::close(law_endpoint(kSource, first).vec(), {0, std::sqrt(0.75), 0.5}, 1e-14));
  CHECK(testing::close(compose(a), kTarget.vec(), 1e-12));

  const ControlLaw b = min_time_law(1.0);
  REQUIRE(b.segments.size() == 1);
  CHECK(b.total_time() == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));

  const ControlLaw c = min_time_law(2.0);
  REQUIRE(c.segments.size() == 2);
  CHECK(c.total_time() == doctest::Approx(1.862681).epsilon(1e-6));
  ControlLaw cfirst = c;
  cfirst.segments.resize(1);
  CHECK(testing::close(law_endpoint(kSource, cfirst).vec(), {0.5, std::sqrt(0.75), 0}, 1e-14));
  CHECK(testing::close(compose(c), kTarget.vec(), 1e-12));

  CHECK_THROWS_AS(min_time_law(0.0), Error);
  CHECK_THROWS_AS(min_time_law(-1.0), Error);
  CHECK_THROWS_AS(min_time_law(INFINITY), Error);
}

TEST_CASE("minimum time symmetry under alpha -> 1/alpha") {
  testing::Rng r(4);
  for (int i = 0; i < 50; ++i) {
    const double a = r.uniform(1e-3, 1.0);
    CHECK(std::abs(min_time_law(1 / a).total_time() - a * min_time_law(a).total_time()) <
          1e-12 * std::max(1.0, min_time_law(a).total_time()));
  }
}

TEST_CASE("propagate_law") {
  const Trajectory one = propagate_law(kSource, ControlLaw{0.7, {}}, 0.1);
  REQUIRE(one.size() == 1);
  CHECK(one.front().state.vec() == kSource.vec());
  for (double alpha : {0.5, 1.0, 2.0}) {
    const Trajectory tr = propagate_law(kSource, min_time_law(alpha), 0.05);
    CHECK(distance(tr.back().state.vec(), kTarget.vec()) < 1e-12);
    CHECK(tr.back().t == doctest::Approx(min_time_law(alpha).total_time()).epsilon(1e-14));
    for (const Sample& s : tr.samples()) CHECK(s.state.in_octant(1e-12));
  }
}

TEST_CASE("arc_exit_time") {
  CHECK(arc_exit_time(kSource, 1, 0, 1.0) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(std::isinf(arc_exit_time(kSource, 0, 1, 2.0)));
  // (0,1) from (0, sqrt(1-a^2), a) reaches the target and then leaves through psi2 = 0.
  const double a = 0.5;
  const StateS2 mid = StateS2::from({0, std::sqrt(1 - a * a), a});
  CHECK(arc_exit_time(mid, 0, 1, a) == doctest::Approx(std::acos(a) / a).epsilon(1e-9));
}

TEST_CASE("synthesis_law special targets") {
  for (double alpha : {0.3, 1.0, 3.0}) {
    CAPTURE(alpha);
    const ControlLaw top = synthesis_law(alpha, kTarget);
    const ControlLaw ref = min_time_law(alpha);
    REQUIRE(top.segments.size() == ref.segments.size());
    CHECK(top.total_time() == doctest::Approx(ref.total_time()).epsilon(1e-12));

    const ControlLaw y = synthesis_law(alpha, StateS2::from({0, 1, 0}));
    REQUIRE(y.segments.size() == 1);
    CHECK(y.segments[0].u1 == 1.0);
    CHECK(y.segments[0].u2 == 0.0);
    CHECK(y.segments[0].duration == doctest::Approx(pi / 2).epsilon(1e-9));

    CHECK(synthesis_law(alpha, kSource).segments.empty());

    const double t = 0.6 * t_alpha(alpha);
    const StateS2 on = law_endpoint(kSource, ControlLaw{alpha, {{1, 1, t}}});
    const ControlLaw direct = synthesis_law(alpha, on);
    REQUIRE(direct.segments.size() == 1);
    CHECK(direct.segments[0].u1 == 1.0);
    CHECK(direct.segments[0].u2 == 1.0);
    CHECK(direct.segments[0].duration == doctest::Approx(t).epsilon(1e-9));
  }
  CHECK_THROWS_AS(synthesis_law(1.0, StateS2::from({0.6, -0.8, 0})), Error);
  CHECK_THROWS_AS(synthesis_law(1.0, StateS2::from({0.6, 0, 0.8})), Error);
}

TEST_CASE("synthesis_law reaches random octant targets") {
  testing::Rng r(8);
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (int i = 0; i < 25; ++i) {
      const StateS2 target =
          StateS2::normalized({r.uniform(0, 1), r.uniform(0.01, 1), r.uniform(0, 1)});
      CAPTURE(alpha);
      CAPTURE(target.vec());
      const ControlLaw law = synthesis_law(alpha, target);
      CHECK(distance(law_endpoint(kSource, law).vec(), target.vec()) < 1e-9);
      CHECK(distance(compose(law), target.vec()) < 1e-9);
      CHECK(law.total_time() <= min_time_law(alpha).total_time() + 1e-9);
      // u1 may only switch +1 -> -1 and u2 only -1 -> +1.
      for (std::size_t k = 1; k < law.segments.size(); ++k) {
        CHECK(law.segments[k].u1 <= law.segments[k - 1].u1);
        CHECK(law.segments[k].u2 >= law.segments[k - 1].u2);
      }
      const Trajectory tr = propagate_law(kSource, law, 0.02);
      for (const Sample& s : tr.samples()) CHECK(s.state.in_octant(1e-9));
    }
  }
}

TEST_CASE("boundary policy") {
  const double alpha = 0.5;
  const StateS2 low = StateS2::from({0, std::sqrt(1 - 0.09), 0.3});
  CHECK_NOTHROW(synthesis_law(alpha, low, BoundaryPolicy::Reached));
  CHECK_THROWS_AS(synthesis_law(alpha, low, BoundaryPolicy::Rejected), Error);
}

TEST_CASE("synthesis_extremals cover the families") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto ext = synthesis_extremals(alpha, 30);
    CHECK(ext.size() >= 20);
    for (const SynthesisExtremal& e : ext) {
      const Trajectory tr = propagate_law(kSource, e.law, 0.02);
      for (const Sample& s : tr.samples()) CHECK(s.state.in_octant(1e-9));
    }
  }
}
