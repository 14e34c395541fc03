#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qoct/integrator.hpp"
#include "qoct/time_optimal.hpp"

namespace qoct {

/// Adaptive Simpson with absolute tolerance tol.
/// Throws ErrorCode::Depth past 60 levels of subdivision.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol);

struct SearchResult {
  double best_time;  // +inf when no candidate reached the target ball
  ControlLaw best_law;
  std::size_t hits;
};

/// Random search over piecewise-constant laws from (1,0,0): 70% of segment
/// controls on the corners of [-1,1]^2, the rest uniform, durations uniform
/// in (0, pi / min(1, alpha)). The last segment is cut at its closest
/// approach to (0,0,1); a hit is a closest approach within tol::oracle_ball.
/// Candidate i depends only on (seed, i), so results are bit-reproducible
/// and nested in n_candidates. `fixed` pins every segment control.
SearchResult sample_search_min_time(double alpha, std::size_t n_candidates,
                                    std::size_t max_segments, std::uint64_t seed,
                                    std::optional<ControlValue> fixed = std::nullopt);

} // namespace qoct
