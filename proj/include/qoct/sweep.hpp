#pragma once

#include <vector>

#include "qoct/trajectory.hpp"

namespace qoct {

struct AlphaPoint {
  double alpha;
  double m3_0;
  double transfer_time;
};

/// Solved m3(0) and transfer time on n points of [from, to], log-spaced by
/// default.
std::vector<AlphaPoint> sweep_alpha(double from, double to, std::size_t n, double tol,
                                    bool log_spacing = true);

struct ParamTrajectory {
  double param;
  Trajectory traj;
};

/// Extremals of the minimum-time synthesis sampled every dt, each running
/// until it leaves S+. param is the first switching time.
std::vector<ParamTrajectory> sweep_synthesis_time(double alpha, std::size_t n, double dt);

/// Minimum-energy extremals for m3(0) evenly spread over [0, 2 m3*], each
/// integrated until it leaves S+ and sampled every dt. param is m3(0).
std::vector<ParamTrajectory> sweep_synthesis_energy(double alpha, std::size_t n, double dt);

} // namespace qoct
