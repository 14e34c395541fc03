#include "qoct/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qoct/constants.hpp"
#include "qoct/errors.hpp"

namespace qoct {

namespace {

constexpr int kMaxAgmLevels = 32;

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > tol::agm_gap * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

} // namespace

Modulus Modulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0))
    fail(ErrorCode::Domain, "elliptic modulus must lie in [0, 1]");
  return Modulus(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

Modulus Modulus::from_complement(double kc) {
  if (!(kc >= 0.0 && kc <= 1.0))
    fail(ErrorCode::Domain, "complementary modulus must lie in [0, 1]");
  return Modulus(std::sqrt((1.0 - kc) * (1.0 + kc)), kc);
}

double complete_k(double k) {
  if (!(k >= 0.0 && k < 1.0))
    fail(ErrorCode::Domain, "complete_k requires 0 <= k < 1");
  return complete_k(Modulus::from_k(k));
}

double complete_k(const Modulus& m) {
  if (!(m.kc() > 0.0))
    fail(ErrorCode::Domain, "complete_k diverges at k = 1");
  return std::numbers::pi / (2.0 * agm(1.0, m.kc()));
}

JacobiTriple jacobi(double u, double k) { return jacobi(u, Modulus::from_k(k)); }

JacobiTriple jacobi(double u, const Modulus& m) {
  if (!std::isfinite(u)) fail(ErrorCode::Domain, "jacobi argument must be finite");
  const double k = m.k();
  if (k < tol::modulus_zero) return {std::sin(u), std::cos(u), 1.0};
  if (m.kc() == 0.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  // a_n, c_n / a_n for n = 0..N (Abramowitz & Stegun 16.4).
  std::array<double, kMaxAgmLevels + 1> ratio{};
  double a = 1.0;
  double b = m.kc();
  double c = k;
  int n = 0;
  ratio[0] = c;
  while (c > tol::agm_gap * a && n < kMaxAgmLevels) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.25 * c * c / an;
    a = an;
    b = bn;
    ++n;
    ratio[n] = c / a;
  }

  double phi = std::ldexp(a * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(ratio[i] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2 has no cancellation, including at u = K.
  const double dn = std::hypot(m.kc(), k * cn);
  return {sn, cn, dn};
}

JacobiDerived jacobi_derived(double u, double k) {
  return jacobi_derived(u, Modulus::from_k(k));
}

JacobiDerived jacobi_derived(double u, const Modulus& m) {
  const JacobiTriple j = jacobi(u, m);
  return {j.cn / j.dn, j.sn / j.dn, 1.0 / j.dn};
}

} // namespace qoct
