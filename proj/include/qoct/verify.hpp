#pragma once

#include <functional>
#include <string>

namespace qoct {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Runs the twelve acceptance criteria in order, reporting each through
/// `report`. `fast` shrinks sample counts and step sizes but keeps every
/// threshold. Returns the number of failed criteria.
int run_acceptance(bool fast, const CriterionCallback& report);

} // namespace qoct
