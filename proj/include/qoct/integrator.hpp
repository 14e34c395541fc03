#pragma once

#include <functional>
#include <vector>

#include "qoct/linalg.hpp"
#include "qoct/trajectory.hpp"

namespace qoct {

struct ControlValue {
  double u1;
  double u2;
};

/// Control as a function of time, plus the instants where it may jump.
/// Integration steps never straddle a breakpoint.
struct ControlSignal {
  std::function<ControlValue(double)> eval;
  std::vector<double> breakpoints;
};

ControlSignal constant_control(double u1, double u2);

/// One classical RK4 step of psi' = H(u(t)) psi, without renormalization.
Vec3 rk4_step(const Vec3& psi, const ControlSignal& control, double alpha,
              double t, double h);

/// Fixed-step RK4 on the sphere from t = 0 to T. Each interval between
/// breakpoints is cut into equal steps no longer than h, and the state is
/// projected back onto the sphere after every step. A sample is kept every
/// `stride` steps (and always at T).
///
/// Throws ErrorCode::Step if a single renormalization exceeds
/// tol::renormalization_limit, ErrorCode::Domain for h <= 0 or T < 0.
Trajectory integrate(const StateS2& psi0, const ControlSignal& control,
                     double alpha, double T, double h, std::size_t stride = 1);

/// Same scheme on SO(3) for g' = H(u(t)) g with Gram-Schmidt
/// re-orthonormalization after every step.
RotationPath integrate_rotation(const Rotation& g0, const ControlSignal& control,
                                double alpha, double T, double h,
                                std::size_t stride = 1);

enum class BoundaryFace { Psi1, Psi2 };

/// Faces watched by first_exit.
struct FaceMask {
  bool psi1 = true;
  bool psi2 = true;
};

struct ExitEvent {
  BoundaryFace face;
  double t;
  StateS2 state;
};

/// Step-doubling RK4 (initial step h) until psi1 or psi2 first turns negative
/// after t = 0; the crossing is bisected to tol::exit_time and `state` is the
/// last point still inside the octant. Throws ErrorCode::Timeout when no
/// crossing happens before `horizon`.
ExitEvent first_exit(const StateS2& psi0, const ControlSignal& control,
                     double alpha, double horizon, double h, FaceMask mask = {});

} // namespace qoct
