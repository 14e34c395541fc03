#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "qoct/integrator.hpp"
#include "qoct/trajectory.hpp"

namespace qoct {

using Complex = std::complex<double>;
using ComplexState = std::array<Complex, 3>;

/// Level energies (hbar = 1) and laser phases.
struct LevelSpec {
  double e1;
  double e2;
  double e3;
  double xi1;
  double xi2;
};

struct LiftedControls {
  std::function<Complex(double)> f1;
  std::function<Complex(double)> f2;
  std::vector<double> breakpoints;
};

/// F_j(t) = u_j(t) exp(i[(E_{j+1} - E_j) t + xi_j]).
LiftedControls lift_controls(const ControlSignal& u, const LevelSpec& spec);

struct ComplexSample {
  double t;
  ComplexState psi;
  double norm_drift;  // |psi| - 1 before renormalization
};

using ComplexTrajectory = std::vector<ComplexSample>;

/// RK4 for i psi' = H(t) psi with the drift diag(E) and couplings F1, alpha F2,
/// steps aligned to the control breakpoints, renormalized every step.
ComplexTrajectory simulate_complex(const ComplexState& psi0, const LiftedControls& f,
                                   const LevelSpec& spec, double alpha, double T, double h,
                                   std::size_t stride = 1);

/// psi -> V^{-1} U(t)^{-1} psi, keeping real parts. Consistency error when an
/// imaginary part exceeds tol::lift_imaginary.
Trajectory interaction_picture(const ComplexTrajectory& traj, const LevelSpec& spec);

/// u_j(t) recovered from F_j(t) by undoing the resonant phase.
ControlValue recover_controls(const LiftedControls& f, const LevelSpec& spec, double t);

struct LiftReport {
  double final_population;      // |psi3(T)|^2
  double max_population_error;  // max over samples and levels of ||psi_j|^2 - psi_j^2|
  double max_norm_drift;
  ComplexTrajectory complex_traj;
  Trajectory reduced;           // real reference trajectory on the same grid
};

/// Lift u, simulate from (1,0,0), compare populations with the real system.
LiftReport lift_and_compare(const ControlSignal& u, double alpha, double T,
                            const LevelSpec& spec, double h, std::size_t stride = 1);

} // namespace qoct
