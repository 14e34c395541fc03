#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qoct/elliptic.hpp"
#include "qoct/errors.hpp"
#include "qoct/oracle.hpp"
#include "support.hpp"

using namespace qoct;
using std::numbers::pi;

TEST_CASE("complete_k") {
  CHECK(complete_k(0.0) == doctest::Approx(pi / 2).epsilon(1e-16));
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    CAPTURE(k);
    CHECK(std::abs(complete_k(k) - testing::k_trapezoid(k)) < 1e-13);
  }
  const double kq = quadrature(
      [](double s) { return 1.0 / std::sqrt(1.0 - 0.25 * std::sin(s) * std::sin(s)); }, 0.0,
      pi / 2, 1e-13);
  CHECK(std::abs(complete_k(0.5) - kq) < 1e-10);
  // Frozen from the trapezoid oracle above.
  CHECK(complete_k(0.5) == doctest::Approx(1.6857503548125961).epsilon(1e-15));
  CHECK(complete_k(1.0 - 1e-12) > 14.0);
  CHECK_THROWS_AS(complete_k(1.0), Error);
  CHECK_THROWS_AS(complete_k(-0.1), Error);
}

TEST_CASE("complete_k from the complement near k = 1") {
  // K ~ ln(4/kc) as kc -> 0.
  const double kc = 1e-9;
  const double k = complete_k(Modulus::from_complement(kc));
  CHECK(k == doctest::Approx(std::log(4.0 / kc)).epsilon(1e-12));
}

TEST_CASE("jacobi degenerate moduli are exact") {
  const JacobiTriple a = jacobi(1.0, 0.0);
  CHECK(a.sn == std::sin(1.0));
  CHECK(a.cn == std::cos(1.0));
  CHECK(a.dn == 1.0);
  const JacobiTriple b = jacobi(1.0, 1.0);
  CHECK(b.sn == std::tanh(1.0));
  CHECK(b.cn == 1.0 / std::cosh(1.0));
  CHECK(b.dn == 1.0 / std::cosh(1.0));
  CHECK_THROWS_AS(jacobi(1.0, 1.5), Error);
  CHECK_THROWS_AS(jacobi(NAN, 0.5), Error);
}

TEST_CASE("jacobi quarter period") {
  const double k = 0.7;
  const double kq = testing::k_trapezoid(k);
  const JacobiTriple j = jacobi(kq, k);
  CHECK(std::abs(j.sn - 1.0) < 1e-10);
  CHECK(std::abs(j.cn) < 1e-10);
  CHECK(std::abs(j.dn - std::sqrt(1 - k * k)) < 1e-10);
}

TEST_CASE("jacobi identities on random points") {
  testing::Rng r(77);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform(-10, 10);
    const double k = r.uniform(0, 0.999);
    const JacobiTriple j = jacobi(u, k);
    worst = std::max(worst, std::abs(j.sn * j.sn + j.cn * j.cn - 1));
    worst = std::max(worst, std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("jacobi satisfies its differential equations") {
  // sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn.
  testing::Rng r(3);
  for (int i = 0; i < 50; ++i) {
    const double u = r.uniform(-6, 6);
    const double k = r.uniform(0, 0.99);
    const double h = 1e-5;
    const JacobiTriple p = jacobi(u + h, k), m = jacobi(u - h, k), j = jacobi(u, k);
    CHECK(std::abs((p.sn - m.sn) / (2 * h) - j.cn * j.dn) < 1e-8);
    CHECK(std::abs((p.cn - m.cn) / (2 * h) + j.sn * j.dn) < 1e-8);
    CHECK(std::abs((p.dn - m.dn) / (2 * h) + k * k * j.sn * j.cn) < 1e-8);
  }
}

TEST_CASE("jacobi_derived") {
  for (double u : {-2.0, 0.3, 4.0}) {
    const JacobiDerived d = jacobi_derived(u, 0.0);
    CHECK(d.cd == doctest::Approx(std::cos(u)).epsilon(1e-15));
    CHECK(d.sd == doctest::Approx(std::sin(u)).epsilon(1e-15));
    CHECK(d.nd == 1.0);
  }
  for (double k : {0.2, 0.6, 0.95}) {
    const JacobiDerived d = jacobi_derived(0.0, k);
    CHECK(d.cd == 1.0);
    CHECK(d.sd == 0.0);
    CHECK(d.nd == 1.0);
  }
  const double k = 0.3;
  const double zero = testing::first_zero([&](double u) { return jacobi_derived(u, k).cd; },
                                          0.0, 4.0);
  CHECK(std::abs(zero - complete_k(k)) < 1e-10);
}
