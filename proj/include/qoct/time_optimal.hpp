#pragma once

#include <vector>

#include "qoct/integrator.hpp"
#include "qoct/linalg.hpp"
#include "qoct/trajectory.hpp"

namespace qoct {

struct Segment {
  double u1;
  double u2;
  double duration;
};

/// Concatenation of constant-control arcs for a given nonisotropy factor.
struct ControlLaw {
  double alpha = 1.0;
  std::vector<Segment> segments;

  double total_time() const;
};

/// Throws ErrorCode::Domain unless alpha is finite and > 0.
void require_alpha(double alpha);
/// |alpha - 1| within the relative isotropy tolerance.
bool is_isotropic(double alpha);

double delta_a(const StateS2& psi, double alpha);
double delta_b1(const StateS2& psi, double alpha);
double delta_b2(const StateS2& psi, double alpha);

/// -psi1/psi2 and alpha*psi3/psi2. Domain error when psi2 vanishes.
double f1(const StateS2& psi);
double f2(const StateS2& psi, double alpha);

/// Propagator of (phi1, phi2, phi3) along an arc with constant (u1, u2):
///   phi1' = -u2 phi3,  phi2' = u1 phi3,  phi3' = alpha^2 u2 phi1 - u1 phi2.
/// Domain error when u1^2 + alpha^2 u2^2 = 0.
Mat3 switching_propagator(double u1, double u2, double alpha, double t);

/// Time spent on the first (1,1) arc of the extremal reaching the target.
double t_alpha(double alpha);

ControlLaw min_time_law(double alpha);

/// How targets on psi1 = 0 below psi3 = alpha (alpha < 1) are treated: they
/// sit on the boundary where (-1,1) arcs leave the octant.
enum class BoundaryPolicy { Reached, Rejected };

/// Optimal law from (1,0,0) to `target`. Domain error for targets outside the
/// octant; NoSolution for other psi2 = 0 targets or when no family member
/// reaches the target.
ControlLaw synthesis_law(double alpha, const StateS2& target,
                         BoundaryPolicy policy = BoundaryPolicy::Reached);

/// Exact endpoint of the law applied to psi0.
StateS2 law_endpoint(const StateS2& psi0, const ControlLaw& law);

/// Exact samples at every multiple of dt inside each segment plus all
/// segment ends. An empty law yields the single sample psi0.
Trajectory propagate_law(const StateS2& psi0, const ControlLaw& law, double dt);

/// Piecewise-constant control signal of the law (right-continuous),
/// holding the last segment's control past the end.
ControlSignal as_control(const ControlLaw& law);

/// Time until the arc from psi under constant (u1, u2) first has a
/// component below -tol::octant; +inf if it never does.
double arc_exit_time(const StateS2& psi, double u1, double u2, double alpha);

/// One extremal of the synthesis, the last arc running until it leaves S+.
struct SynthesisExtremal {
  double param;
  ControlLaw law;
};

/// About n extremals spread over the synthesis families, ordered by family
/// then by the first switching time.
std::vector<SynthesisExtremal> synthesis_extremals(double alpha, std::size_t n);

} // namespace qoct
