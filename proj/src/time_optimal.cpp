#include "qoct/time_optimal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kScanPoints = 2000;

Vec3 unit(const Vec3& v) { return (1.0 / norm(v)) * v; }

// Right-handed angle in [0, 2 pi) turning p into q about unit axis n.
double angle_about(const Vec3& n, const Vec3& p, const Vec3& q) {
  const Vec3 pp = p - dot(n, p) * n;
  const Vec3 qp = q - dot(n, q) * n;
  if (norm(pp) < tol::structural || norm(qp) < tol::structural) return 0.0;
  double a = std::atan2(dot(n, cross(pp, qp)), dot(pp, qp));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  // A root that lands a hair past q must not become a full turn.
  if (2.0 * std::numbers::pi - a < 1e-8) a = 0.0;
  return a;
}

struct Family {
  double lo;
  double hi;
  std::function<std::vector<Segment>(double)> prefix;
  double u1;
  double u2;
  // Extra cap on the final arc beyond its exit from the octant.
  std::function<double(double)> max_tau = [](double) { return kInf; };
};

std::vector<Family> families(double alpha, bool for_sweep) {
  const double pi = std::numbers::pi;
  const double ta = t_alpha(alpha);
  auto bang10 = [](double a) { return std::vector<Segment>{{1, 0, a}}; };
  auto bang11 = [](double a) { return std::vector<Segment>{{1, 1, a}}; };
  std::vector<Family> f;
  if (is_isotropic(alpha)) {
    f.push_back({0.0, pi / 2, bang10, 1, 1});
    f.push_back({0.0, ta, bang11, -1, 1});
  } else if (alpha < 1.0) {
    const double ts = std::acos(alpha) / alpha;
    f.push_back({0.0, pi / 2, bang10, 1, 1});
    f.push_back({0.0, ta, bang11, -1, 1});
    f.push_back({ta, ta + ts,
                 [ta](double a) { return std::vector<Segment>{{1, 1, ta}, {0, 1, a - ta}}; },
                 -1, 1});
  } else {
    const double ac = std::acos(1.0 / alpha);
    // Below ac the (1,1) arc switches after ta; for targets on it the
    // family is still "(1,0) then (1,1)" with the arc capped.
    Family a{for_sweep ? ac : 0.0, pi / 2, bang10, 1, 1};
    a.max_tau = [ac, ta](double s) { return s < ac ? ta : kInf; };
    f.push_back(a);
    f.push_back({0.0, ac,
                 [ta](double s) { return std::vector<Segment>{{1, 0, s}, {1, 1, ta}}; },
                 -1, 1});
    f.push_back({0.0, ta, bang11, -1, 1});
  }
  return f;
}

Vec3 prefix_end(const std::vector<Segment>& segs, double alpha) {
  Vec3 p{1.0, 0.0, 0.0};
  for (const Segment& s : segs)
    p = rodrigues_exp(generator(s.u1, s.u2, alpha), s.duration).apply(p);
  return p;
}

struct Candidate {
  ControlLaw law;
  double miss;
};

std::optional<Candidate> try_param(const Family& fam, double a, double alpha,
                                   const StateS2& target) {
  std::vector<Segment> segs = fam.prefix(a);
  const Vec3 p = prefix_end(segs, alpha);
  const SkewGenerator g = generator(fam.u1, fam.u2, alpha);
  const Vec3 n = unit(g.axis());
  const double tau = angle_about(n, p, target.vec()) / g.rate();
  const double exit = arc_exit_time(StateS2::normalized(p), fam.u1, fam.u2, alpha);
  if (tau > std::min(exit, fam.max_tau(a)) + tol::synthesis_endpoint) return std::nullopt;
  const Vec3 end = rodrigues_exp(g, tau).apply(p);
  const double miss = distance(end, target.vec());
  if (miss > tol::synthesis_endpoint) return std::nullopt;
  segs.push_back({fam.u1, fam.u2, tau});
  ControlLaw law{alpha, {}};
  for (const Segment& s : segs)
    if (s.duration > tol::structural) law.segments.push_back(s);
  return Candidate{law, miss};
}

// Roots of n . p(a) - n . target over the family's parameter range.
std::vector<double> roots(const Family& fam, double alpha, const StateS2& target) {
  const SkewGenerator g = generator(fam.u1, fam.u2, alpha);
  const Vec3 n = unit(g.axis());
  const double level = dot(n, target.vec());
  auto res = [&](double a) { return dot(n, prefix_end(fam.prefix(a), alpha)) - level; };

  std::vector<double> xs(kScanPoints + 1), gs(kScanPoints + 1);
  for (std::size_t i = 0; i <= kScanPoints; ++i) {
    xs[i] = fam.lo + (fam.hi - fam.lo) * static_cast<double>(i) / kScanPoints;
    gs[i] = res(xs[i]);
  }
  std::vector<double> out;
  for (std::size_t i = 0; i <= kScanPoints; ++i) {
    if (gs[i] == 0.0) out.push_back(xs[i]);
    if (i == kScanPoints) break;
    if ((gs[i] < 0.0) != (gs[i + 1] < 0.0) && gs[i] != 0.0 && gs[i + 1] != 0.0) {
      double lo = xs[i], hi = xs[i + 1], glo = gs[i];
      while (hi - lo > tol::synthesis_bracket) {
        const double mid = 0.5 * (lo + hi);
        const double gm = res(mid);
        if (gm == 0.0) { lo = hi = mid; break; }
        if ((gm < 0.0) == (glo < 0.0)) { lo = mid; glo = gm; } else { hi = mid; }
      }
      out.push_back(0.5 * (lo + hi));
    }
  }
  // Tangential roots: refine local minima of |g| by golden section.
  for (std::size_t i = 1; i < kScanPoints; ++i) {
    const double m = std::abs(gs[i]);
    if (m > tol::synthesis_residual * 1e4 || m > std::abs(gs[i - 1]) ||
        m > std::abs(gs[i + 1]))
      continue;
    double lo = xs[i - 1], hi = xs[i + 1];
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    double fc = std::abs(res(c)), fd = std::abs(res(d));
    while (hi - lo > tol::synthesis_bracket) {
      if (fc < fd) { hi = d; d = c; fd = fc; c = hi - r * (hi - lo); fc = std::abs(res(c)); }
      else { lo = c; c = d; fc = fd; d = lo + r * (hi - lo); fd = std::abs(res(d)); }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

} // namespace

double ControlLaw::total_time() const {
  double t = 0.0;
  for (const Segment& s : segments) t += s.duration;
  return t;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "alpha must be finite and > 0, got " << alpha;
    fail(ErrorCode::Domain, os.str());
  }
}

bool is_isotropic(double alpha) { return std::abs(alpha - 1.0) <= tol::isotropic_rel; }

double delta_a(const StateS2& psi, double alpha) { return alpha * psi.psi2(); }
double delta_b1(const StateS2& psi, double alpha) { return alpha * psi.psi1(); }
double delta_b2(const StateS2& psi, double alpha) { return -alpha * alpha * psi.psi3(); }

double f1(const StateS2& psi) {
  if (std::abs(psi.psi2()) < tol::structural)
    fail(ErrorCode::Domain, "f1 undefined on psi2 = 0 (singular locus)");
  return -psi.psi1() / psi.psi2();
}

double f2(const StateS2& psi, double alpha) {
  if (std::abs(psi.psi2()) < tol::structural)
    fail(ErrorCode::Domain, "f2 undefined on psi2 = 0 (singular locus)");
  return alpha * psi.psi3() / psi.psi2();
}

Mat3 switching_propagator(double u1, double u2, double alpha, double t) {
  const double w2 = u1 * u1 + alpha * alpha * u2 * u2;
  if (!(w2 > 0.0))
    fail(ErrorCode::Domain, "switching propagator needs u1^2 + alpha^2 u2^2 > 0");
  Mat3 a;
  a(0, 2) = -u2;
  a(1, 2) = u1;
  a(2, 0) = alpha * alpha * u2;
  a(2, 1) = -u1;
  // a^3 = -w^2 a, so the exponential closes like Rodrigues.
  const double w = std::sqrt(w2);
  const double s = std::sin(w * t) / w;
  const double c = 2.0 * std::pow(std::sin(0.5 * w * t), 2) / w2;
  return Mat3::identity() + s * a + c * (a * a);
}

double t_alpha(double alpha) {
  require_alpha(alpha);
  const double den = std::sqrt(1.0 + alpha * alpha);
  if (alpha <= 1.0) return std::acos(-alpha * alpha) / den;
  return std::acos(-1.0 / (alpha * alpha)) / den;
}

ControlLaw min_time_law(double alpha) {
  require_alpha(alpha);
  ControlLaw law{alpha, {}};
  if (is_isotropic(alpha)) {
    law.segments = {{1, 1, t_alpha(alpha)}};
  } else if (alpha < 1.0) {
    law.segments = {{1, 1, t_alpha(alpha)}, {0, 1, std::acos(alpha) / alpha}};
  } else {
    law.segments = {{1, 0, std::acos(1.0 / alpha)}, {1, 1, t_alpha(alpha)}};
  }
  return law;
}

double arc_exit_time(const StateS2& psi, double u1, double u2, double alpha) {
  const SkewGenerator g = generator(u1, u2, alpha);
  const double rate = g.rate();
  if (rate == 0.0) return kInf;
  const Vec3 n = unit(g.axis());
  const Vec3& p = psi.vec();
  const Vec3 pp = p - dot(n, p) * n;
  const Vec3 q = cross(n, p);
  const double two_pi = 2.0 * std::numbers::pi;
  double best = kInf;
  // Component i is c + x cos(theta) + y sin(theta) = c + r cos(theta - phi).
  for (std::size_t i = 0; i < 3; ++i) {
    const double c = n[i] * dot(n, p);
    const double r = std::hypot(pp[i], q[i]);
    const double level = -tol::octant;
    if (c - r >= level) continue;
    if (c + r < level) return 0.0;
    const double ac = std::acos((level - c) / r);
    double s = std::fmod(-std::atan2(q[i], pp[i]), two_pi);
    if (s < 0.0) s += two_pi;
    // Below the level for theta - phi in (ac, 2 pi - ac) mod 2 pi.
    if (s > ac && s < two_pi - ac) return 0.0;
    double th = std::fmod(ac - s, two_pi);
    if (th < 0.0) th += two_pi;
    best = std::min(best, th / rate);
  }
  return best;
}

ControlLaw synthesis_law(double alpha, const StateS2& target, BoundaryPolicy policy) {
  require_alpha(alpha);
  if (!target.in_octant(tol::octant))
    fail(ErrorCode::Domain, "target must lie in the positive octant");
  if (distance(target.vec(), StateS2::target().vec()) < tol::structural)
    return min_time_law(alpha);
  if (distance(target.vec(), StateS2::source().vec()) < tol::structural)
    return ControlLaw{alpha, {}};
  if (target.psi2() < tol::structural)
    fail(ErrorCode::NoSolution,
         "targets with psi2 = 0 other than (1,0,0) and (0,0,1) are not reached by the synthesis");
  if (policy == BoundaryPolicy::Rejected && alpha < 1.0 && !is_isotropic(alpha) &&
      target.psi1() < tol::structural && target.psi3() < alpha)
    fail(ErrorCode::NoSolution, "boundary target on psi1 = 0 below psi3 = alpha rejected");

  std::optional<ControlLaw> best;
  for (const Family& fam : families(alpha, false)) {
    std::vector<double> as = roots(fam, alpha, target);
    as.push_back(fam.lo);
    as.push_back(fam.hi);
    for (double a : as) {
      const auto c = try_param(fam, a, alpha, target);
      if (!c) continue;
      if (!best) { best = c->law; continue; }
      const double dt = c->law.total_time() - best->total_time();
      if (dt < -tol::structural ||
          (dt <= tol::structural && c->law.segments.size() < best->segments.size()))
        best = c->law;
    }
  }
  if (!best) {
    std::ostringstream os;
    os.precision(17);
    os << "no synthesis extremal reaches (" << target.psi1() << ", " << target.psi2() << ", "
       << target.psi3() << ")";
    fail(ErrorCode::NoSolution, os.str());
  }
  return *best;
}

StateS2 law_endpoint(const StateS2& psi0, const ControlLaw& law) {
  Rotation r;
  for (const Segment& s : law.segments)
    r = rodrigues_exp(generator(s.u1, s.u2, law.alpha), s.duration) * r;
  return r.apply(psi0);
}

Trajectory propagate_law(const StateS2& psi0, const ControlLaw& law, double dt) {
  Trajectory traj;
  const auto& segs = law.segments;
  std::vector<Segment> live;
  for (const Segment& s : segs)
    if (s.duration > 0.0) live.push_back(s);
  if (live.empty()) {
    traj.push({0.0, psi0, 0.0, 0.0});
    return traj;
  }
  traj.push({0.0, psi0, live[0].u1, live[0].u2});
  StateS2 start = psi0;
  double t0 = 0.0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    const Segment& s = live[i];
    const SkewGenerator g = generator(s.u1, s.u2, law.alpha);
    if (dt > 0.0) {
      for (std::size_t k = 1;; ++k) {
        const double tl = dt * static_cast<double>(k);
        if (tl >= s.duration - 1e-9 * dt) break;
        traj.push({t0 + tl, rodrigues_exp(g, tl).apply(start), s.u1, s.u2});
      }
    }
    start = rodrigues_exp(g, s.duration).apply(start);
    t0 += s.duration;
    const Segment& nx = i + 1 < live.size() ? live[i + 1] : s;
    traj.push({t0, start, nx.u1, nx.u2});
  }
  return traj;
}

ControlSignal as_control(const ControlLaw& law) {
  std::vector<double> ends;
  double t = 0.0;
  for (const Segment& s : law.segments) {
    t += s.duration;
    ends.push_back(t);
  }
  auto segs = law.segments;
  ControlSignal c;
  c.breakpoints = ends;
  c.eval = [segs, ends](double x) -> ControlValue {
    if (segs.empty()) return {0.0, 0.0};
    const auto it = std::upper_bound(ends.begin(), ends.end(), x);
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(it - ends.begin()), segs.size() - 1);
    return {segs[i].u1, segs[i].u2};
  };
  return c;
}

std::vector<SynthesisExtremal> synthesis_extremals(double alpha, std::size_t n) {
  require_alpha(alpha);
  const std::vector<Family> fams = families(alpha, true);
  std::vector<SynthesisExtremal> out;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const Family& fam = fams[f];
    const std::size_t m = n / fams.size() + (f < n % fams.size() ? 1 : 0);
    for (std::size_t i = 0; i < m; ++i) {
      const double a = fam.lo + (fam.hi - fam.lo) * (static_cast<double>(i) + 0.5) /
                                    static_cast<double>(m);
      std::vector<Segment> segs = fam.prefix(a);
      const Vec3 p = prefix_end(segs, alpha);
      const SkewGenerator g = generator(fam.u1, fam.u2, alpha);
      double tau = std::min(arc_exit_time(StateS2::normalized(p), fam.u1, fam.u2, alpha),
                            fam.max_tau(a));
      if (!std::isfinite(tau)) tau = 2.0 * std::numbers::pi / g.rate();
      segs.push_back({fam.u1, fam.u2, tau});
      ControlLaw law{alpha, {}};
      for (const Segment& s : segs)
        if (s.duration > tol::structural) law.segments.push_back(s);
      out.push_back({a, law});
    }
  }
  return out;
}

} // namespace qoct
