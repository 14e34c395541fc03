#pragma once

#include "qoct/integrator.hpp"
#include "qoct/linalg.hpp"
#include "qoct/trajectory.hpp"

namespace qoct {

enum class Regime { Zero, SubCritical, Critical, SuperCritical, AlphaAboveOne };

const char* to_string(Regime r) noexcept;

/// Regime of the extremal with shooting parameter m3_0 (>= 0).
Regime classify(double alpha, double m3_0);

struct EnergyExtremal {
  double alpha;
  double m3_0;
  Regime regime;

  /// Validates alpha > 0 and m3_0 >= 0, then classifies.
  static EnergyExtremal make(double alpha, double m3_0);
};

/// Controls in the v-coordinates (v2 = alpha * u2) and the adjoint m3.
struct ExtremalSample {
  double t;
  double v1;
  double v2;
  double m3;
  double alpha;

  double u1() const { return v1; }
  double u2() const { return v2 / alpha; }
  /// (v1^2 + v2^2 / alpha^2) / 2.
  double k1() const;
  /// (v1^2 - alpha^2 m3^2 / (1 - alpha^2)) / 2; meaningless at alpha = 1.
  double k2() const;
};

ExtremalSample controls_at(const EnergyExtremal& e, double t);

/// Control signal (u1, u2) of the extremal.
ControlSignal extremal_control(const EnergyExtremal& e);

/// First zero of v1. Regime error unless SuperCritical or AlphaAboveOne.
double transfer_time(double alpha, double m3_0);

/// Time at which v1 reaches its first minimum; +inf where v1 is monotone.
double half_period(const EnergyExtremal& e);

struct M3Bounds {
  double lower;  // exclusive
  double upper;  // inclusive
};

M3Bounds m3_bounds(double alpha);

enum class ExitFace { Psi1Face, Psi2Face, Target };

const char* to_string(ExitFace f) noexcept;

struct ExitReport {
  ExitFace face;         // Target when the exit point is within tol::target_ball
  BoundaryFace crossed;  // raw face that was crossed
  double t;
  StateS2 state;
  double miss;           // distance of the exit point from (0,0,1)
};

/// Exit of the extremal trajectory from S+, bisected to tol::exit_time.
/// Timeout error past 10x the upper-bound transfer time.
ExitReport locate_exit(double alpha, double m3_0);
ExitFace exit_face(double alpha, double m3_0);

/// Dichotomy on m3_0 inside m3_bounds. Returns the Psi2-side end of the final
/// bracket. Bracket error when the bounds do not straddle.
double solve_m3(double alpha, double tol);

/// Integral of v1^2 + v2^2 / alpha^2 over [0, T].
double energy_cost(const EnergyExtremal& e, double T);

/// Fixed-step integration of the extremal from (1,0,0) with K1/K2 monitors.
Trajectory integrate_extremal(const EnergyExtremal& e, double T, double h,
                              std::size_t stride = 1);

} // namespace qoct
