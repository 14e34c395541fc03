#include "qoct/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "qoct/errors.hpp"
#include "qoct/min_energy.hpp"
#include "qoct/time_optimal.hpp"

namespace qoct {

namespace {

constexpr double kEnergyStep = 1e-3;

void require_count(std::size_t n) {
  if (n < 1) fail(ErrorCode::Domain, "sweep needs at least one point");
}

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::Domain, "sample spacing must be > 0");
}

} // namespace

std::vector<AlphaPoint> sweep_alpha(double from, double to, std::size_t n, double tol,
                                    bool log_spacing) {
  require_alpha(from);
  require_alpha(to);
  require_count(n);
  std::vector<AlphaPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const double a = log_spacing ? from * std::pow(to / from, s) : from + (to - from) * s;
    const double m = solve_m3(a, tol);
    out.push_back({a, m, transfer_time(a, m)});
  }
  return out;
}

std::vector<ParamTrajectory> sweep_synthesis_time(double alpha, std::size_t n, double dt) {
  require_count(n);
  require_dt(dt);
  std::vector<ParamTrajectory> out;
  for (const SynthesisExtremal& x : synthesis_extremals(alpha, n))
    out.push_back({x.param, propagate_law(StateS2::source(), x.law, dt)});
  return out;
}

std::vector<ParamTrajectory> sweep_synthesis_energy(double alpha, std::size_t n, double dt) {
  require_count(n);
  require_dt(dt);
  const double top = 2.0 * solve_m3(alpha, 1e-10);
  const auto stride = std::max<std::size_t>(
      static_cast<std::size_t>(std::llround(dt / kEnergyStep)), 1);
  std::vector<ParamTrajectory> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double m =
        n == 1 ? top : top * static_cast<double>(i) / static_cast<double>(n - 1);
    const EnergyExtremal e = EnergyExtremal::make(alpha, m);
    const double t_exit = locate_exit(alpha, m).t;
    out.push_back({m, integrate_extremal(e, t_exit, kEnergyStep, stride)});
  }
  return out;
}

} // namespace qoct
