#include "qoct/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

namespace {

constexpr int kMaxDepth = 60;

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (!(a < lm && lm < m && m < rm && rm < b))
    fail(ErrorCode::Depth, "adaptive Simpson ran out of representable subintervals");
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= kMaxDepth) fail(ErrorCode::Depth, "adaptive Simpson exceeded 60 levels");
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream of doubles in [0, 1) for one candidate.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index)
      : state_(splitmix(splitmix(seed) ^ (index * 0xD1342543DE82EF95ULL))) {}

  double next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return static_cast<double>(splitmix(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Duration in [0, d] along the arc from p that brings it closest to q.
double closest_approach(const SkewGenerator& g, const Vec3& p, const Vec3& q, double d) {
  const double r = g.rate();
  if (r == 0.0) return 0.0;
  const Vec3 n = (1.0 / r) * g.axis();
  const Vec3 pp = p - dot(n, p) * n;
  const double a = dot(q, pp);
  const double b = dot(q, cross(n, p));
  // q . x(tau) = const + a cos(r tau) + b sin(r tau).
  auto score = [&](double tau) { return a * std::cos(r * tau) + b * std::sin(r * tau); };
  double best = 0.0;
  if (score(d) > score(best)) best = d;
  double th = std::atan2(b, a);
  if (th < 0.0) th += 2.0 * std::numbers::pi;
  if (th / r <= d && score(th / r) > score(best)) best = th / r;
  return best;
}

bool law_less(const ControlLaw& x, const ControlLaw& y) {
  if (x.segments.size() != y.segments.size()) return x.segments.size() < y.segments.size();
  for (std::size_t i = 0; i < x.segments.size(); ++i) {
    const Segment& s = x.segments[i];
    const Segment& t = y.segments[i];
    if (s.u1 != t.u1) return s.u1 < t.u1;
    if (s.u2 != t.u2) return s.u2 < t.u2;
    if (s.duration != t.duration) return s.duration < t.duration;
  }
  return false;
}

} // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::Domain, "quadrature tolerance must be > 0");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

SearchResult sample_search_min_time(double alpha, std::size_t n_candidates,
                                    std::size_t max_segments, std::uint64_t seed,
                                    std::optional<ControlValue> fixed) {
  require_alpha(alpha);
  if (n_candidates < 1 || max_segments < 1)
    fail(ErrorCode::Domain, "oracle needs at least one candidate and one segment");
  const double max_duration = std::numbers::pi / std::min(1.0, alpha);
  const Vec3 target = StateS2::target().vec();

  SearchResult res{std::numeric_limits<double>::infinity(), ControlLaw{alpha, {}}, 0};
  for (std::size_t i = 0; i < n_candidates; ++i) {
    Stream rng(seed, i);
    const auto nseg = std::min<std::size_t>(
        1 + static_cast<std::size_t>(rng.next() * static_cast<double>(max_segments)),
        max_segments);
    ControlLaw law{alpha, {}};
    Vec3 p{1.0, 0.0, 0.0};
    for (std::size_t s = 0; s < nseg; ++s) {
      double u1, u2;
      if (fixed) {
        u1 = fixed->u1;
        u2 = fixed->u2;
      } else if (rng.next() < 0.7) {
        u1 = rng.next() < 0.5 ? -1.0 : 1.0;
        u2 = rng.next() < 0.5 ? -1.0 : 1.0;
      } else {
        u1 = 2.0 * rng.next() - 1.0;
        u2 = 2.0 * rng.next() - 1.0;
      }
      double d = max_duration * (1.0 - rng.next());
      const SkewGenerator g = generator(u1, u2, alpha);
      if (s + 1 == nseg) d = closest_approach(g, p, target, d);
      p = rodrigues_exp(g, d).apply(p);
      law.segments.push_back({u1, u2, d});
    }
    if (distance(p, target) > tol::oracle_ball) continue;
    ++res.hits;
    const double t = law.total_time();
    if (t < res.best_time || (t == res.best_time && law_less(law, res.best_law))) {
      res.best_time = t;
      res.best_law = law;
    }
  }
  return res;
}

} // namespace qoct
