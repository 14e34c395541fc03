#pragma once

#include <optional>
#include <vector>

#include "qoct/linalg.hpp"

namespace qoct {

struct Monitors {
  /// |psi| - 1 before the step's renormalization.
  double norm_drift = 0.0;
  /// Conserved quantities, present along minimum-energy extremals.
  std::optional<double> k1;
  std::optional<double> k2;
};

struct Sample {
  double t;
  StateS2 state;
  double u1;
  double u2;
  Monitors monitors{};
};

/// Time-stamped states with the control in force from that instant on.
class Trajectory {
 public:
  Trajectory() = default;

  /// Throws ErrorCode::Domain unless s.t is strictly after the last sample.
  void push(const Sample& s);

  const std::vector<Sample>& samples() const { return samples_; }
  std::vector<Sample>& samples() { return samples_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  const Sample& front() const { return samples_.front(); }
  const Sample& back() const { return samples_.back(); }

 private:
  std::vector<Sample> samples_;
};

struct RotationSample {
  double t;
  Rotation g;
};

using RotationPath = std::vector<RotationSample>;

} // namespace qoct
