#pragma once

// Numerical tolerances shared by every module. Values are absolute unless the
// name says otherwise.

namespace qoct::tol {

/// Unit-norm and orthogonality checks on constructed states and rotations.
inline constexpr double structural = 1e-12;
/// Octant membership slack for a component that should be >= 0.
inline constexpr double octant = 1e-12;
/// Below this rotation angle Rodrigues coefficients come from their series.
inline constexpr double rodrigues_series_angle = 1e-6;

/// AGM iteration stops once the arithmetic-geometric gap falls under this.
inline constexpr double agm_gap = 1e-15;
/// Moduli this close to 0 use the circular closed forms.
inline constexpr double modulus_zero = 1e-10;

/// Relative window on m3(0)^2 - (1 - alpha^2)/alpha^2 for the critical regime.
inline constexpr double critical_window_rel = 2e-15;
/// |alpha - 1| relative window treated as the isotropic case.
inline constexpr double isotropic_rel = 1e-12;

/// Singular-locus membership along sampled trajectories.
inline constexpr double singular_locus = 1e-9;
/// Endpoint miss accepted by the time-optimal synthesis root finder.
inline constexpr double synthesis_endpoint = 1e-9;
/// Bracket width at which synthesis bisection stops.
inline constexpr double synthesis_bracket = 1e-14;
/// Residual at which synthesis bisection stops.
inline constexpr double synthesis_residual = 1e-10;

/// Exit events are bisected to this width in time.
inline constexpr double exit_time = 1e-11;
/// An exit point this close to (0,0,1) is reported as the target.
inline constexpr double target_ball = 1e-8;
/// Hit radius of the random-search oracle.
inline constexpr double oracle_ball = 1e-3;
/// Local error target for step-doubling RK4.
inline constexpr double step_doubling_local = 1e-13;
/// A single renormalization larger than this means a step straddled a kink.
inline constexpr double renormalization_limit = 1e-6;

/// Imaginary residue allowed after undoing the resonant phases.
inline constexpr double lift_imaginary = 1e-4;

} // namespace qoct::tol
