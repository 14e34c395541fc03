#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qoct/elliptic.hpp"
#include "qoct/errors.hpp"
#include "qoct/oracle.hpp"
#include "qoct/time_optimal.hpp"

using namespace qoct;
using std::numbers::pi;

TEST_CASE("quadrature") {
  CHECK(quadrature([](double) { return 1.0; }, 0.0, pi / 2, 1e-12) ==
        doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(std::abs(quadrature([](double x) { return x * x; }, 0.0, 1.0, 1e-12) - 1.0 / 3) < 1e-12);
  const double k = 0.5;
  const double q = quadrature(
      [k](double s) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(s) * std::sin(s)); }, 0.0,
      pi / 2, 1e-13);
  CHECK(std::abs(q - complete_k(k)) < 1e-10);
  // A jump makes Simpson's estimate stall at every level.
  CHECK_THROWS_AS(quadrature([](double x) { return x < 1.0 / 3 ? 0.0 : 1.0; }, 0.0, 1.0, 1e-300),
                  Error);
}

TEST_CASE("search never beats the closed-form time beyond the ball slack") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const SearchResult r = sample_search_min_time(alpha, 10000, 5, 20240501);
    CAPTURE(alpha);
    CHECK(r.best_time >= min_time_law(alpha).total_time() - 5e-3);
    if (r.hits > 0) {
      CHECK(std::isfinite(r.best_time));
      CHECK(r.best_law.total_time() == doctest::Approx(r.best_time).epsilon(1e-12));
      CHECK(distance(law_endpoint(StateS2::source(), r.best_law).vec(),
                     StateS2::target().vec()) <= 1e-3 + 1e-12);
    } else {
      CHECK(std::isinf(r.best_time));
    }
  }
}

TEST_CASE("pinned single bang recovers the isotropic optimum") {
  const SearchResult r = sample_search_min_time(1.0, 200, 1, 3, ControlValue{1, 1});
  REQUIRE(r.hits > 0);
  CHECK(std::abs(r.best_time - pi / std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("search is reproducible and nested") {
  const SearchResult a = sample_search_min_time(1.0, 3000, 4, 99);
  const SearchResult b = sample_search_min_time(1.0, 3000, 4, 99);
  CHECK(a.best_time == b.best_time);
  CHECK(a.hits == b.hits);
  REQUIRE(a.best_law.segments.size() == b.best_law.segments.size());
  for (std::size_t i = 0; i < a.best_law.segments.size(); ++i) {
    CHECK(a.best_law.segments[i].u1 == b.best_law.segments[i].u1);
    CHECK(a.best_law.segments[i].u2 == b.best_law.segments[i].u2);
    CHECK(a.best_law.segments[i].duration == b.best_law.segments[i].duration);
  }
  double prev = INFINITY;
  std::size_t prev_hits = 0;
  for (std::size_t n : {500u, 1000u, 2000u, 4000u}) {
    const SearchResult r = sample_search_min_time(1.0, n, 4, 99);
    CHECK(r.best_time <= prev);
    CHECK(r.hits >= prev_hits);
    prev = r.best_time;
    prev_hits = r.hits;
  }
}
