#pragma once

#include <stdexcept>
#include <string>

namespace qoct {

enum class ErrorCode {
  Domain = 1,   // argument outside the operation's domain
  NoSolution,   // root finding could not reach the requested target
  Regime,       // quantity undefined in this extremal regime
  Bracket,      // dichotomy bounds do not straddle
  Timeout,      // no boundary crossing before the horizon
  Step,         // integration step straddled a control discontinuity
  Consistency,  // lifted trajectory does not reduce to real variables
  Depth,        // adaptive quadrature recursion limit
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace qoct
