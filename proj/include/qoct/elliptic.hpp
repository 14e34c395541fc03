#pragma once

// Jacobi elliptic functions and the complete elliptic integral K.
//
// Every function here takes the MODULUS k (0 <= k <= 1), never the parameter
// m = k^2 that Boost, scipy and the Abramowitz-Stegun tables use.

namespace qoct {

/// Elliptic modulus k paired with its complement k' = sqrt(1 - k^2).
///
/// Near k = 1 the complement cannot be recovered accurately from k, so
/// callers that know k' in closed form should build the modulus from it.
class Modulus {
 public:
  /// Throws ErrorCode::Domain unless 0 <= k <= 1.
  static Modulus from_k(double k);
  /// Throws ErrorCode::Domain unless 0 <= kc <= 1.
  static Modulus from_complement(double kc);

  double k() const { return k_; }
  double kc() const { return kc_; }

 private:
  Modulus(double k, double kc) : k_(k), kc_(kc) {}
  double k_;
  double kc_;
};

/// K(k) = integral over [0, pi/2] of ds / sqrt(1 - k^2 sin^2 s), by AGM.
/// Throws ErrorCode::Domain for k outside [0, 1).
double complete_k(double k);
double complete_k(const Modulus& m);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn by the descending Landen / AGM scheme. k = 0 and k = 1 use the
/// circular and hyperbolic closed forms.
JacobiTriple jacobi(double u, double k);
JacobiTriple jacobi(double u, const Modulus& m);

struct JacobiDerived {
  double cd;  // cn / dn
  double sd;  // sn / dn
  double nd;  // 1 / dn
};

JacobiDerived jacobi_derived(double u, double k);
JacobiDerived jacobi_derived(double u, const Modulus& m);

} // namespace qoct
