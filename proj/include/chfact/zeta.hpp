#pragma once

// The zeta(z) ansatz family and the machinery built on it: the master
// constraint residual, the log-derivative prefactors g(z) and h(z), and the
// contiguous-relation coefficient bundle.
//
// zeta is one of  c*z,  c*z^d,  c*e^(-z);  all derivatives are analytic.
// Fractional powers take the principal branch; real z < 0 in the power
// family is evaluated as the limit from the upper half plane.

#include <cmath>
#include <complex>

#include "chfact/chf.hpp"
#include "chfact/errors.hpp"

namespace chfact {

enum class ZetaFamily { Linear, Power, Exponential };

struct ZetaMap {
  ZetaFamily family = ZetaFamily::Linear;
  cplx c{1.0, 0.0};
  double d = 1.0;  // Power only

  static ZetaMap linear(cplx c) { return {ZetaFamily::Linear, c, 1.0}; }
  static ZetaMap power(cplx c, double d) {
    if (d <= 0.0) throw DomainError("ZetaMap: power exponent must be positive");
    return {ZetaFamily::Power, c, d};
  }
  static ZetaMap exponential(cplx c) { return {ZetaFamily::Exponential, c, 1.0}; }

  // z enters as a real coordinate; powers of negative z are the limits from
  // above, consistent with the kernel's branch cut
  cplx zpow(double z, double p) const {
    if (z > 0.0) return std::pow(z, p);
    if (z == 0.0) throw DomainError("ZetaMap: z = 0 in power family");
    return std::exp(p * cplx(std::log(-z), detail::kPi));
  }

  cplx value(double z) const {
    switch (family) {
      case ZetaFamily::Linear: return c * z;
      case ZetaFamily::Power: return c * zpow(z, d);
      case ZetaFamily::Exponential: return c * std::exp(-z);
    }
    throw Error("unreachable");
  }

  cplx d1(double z) const {
    switch (family) {
      case ZetaFamily::Linear: return c;
      case ZetaFamily::Power: return c * d * zpow(z, d - 1.0);
      case ZetaFamily::Exponential: return -c * std::exp(-z);
    }
    throw Error("unreachable");
  }

  cplx d2(double z) const {
    switch (family) {
      case ZetaFamily::Linear: return 0.0;
      case ZetaFamily::Power: return c * d * (d - 1.0) * zpow(z, d - 2.0);
      case ZetaFamily::Exponential: return c * std::exp(-z);
    }
    throw Error("unreachable");
  }

  cplx d3(double z) const {
    switch (family) {
      case ZetaFamily::Linear: return 0.0;
      case ZetaFamily::Power:
        return c * d * (d - 1.0) * (d - 2.0) * zpow(z, d - 3.0);
      case ZetaFamily::Exponential: return -c * std::exp(-z);
    }
    throw Error("unreachable");
  }
};

struct GreekCoefficients {
  cplx beta;
  cplx gamma_c;
  cplx delta_c;
};

inline GreekCoefficients greek_coefficients(CHFKind kind, const CHFParams& p) {
  return {beta_coefficient(kind, p), gamma_coefficient(kind, p),
          delta_coefficient(kind, p)};
}

// residual of
//   (z')^2 [1 + 2(2a-b)/zeta + b(b-2)/zeta^2] + 3 (zeta''/zeta')^2
//     - 2 zeta'''/zeta'  =  rhs,
// rhs being (8M/hbar^2 kz^2)(V_eff - E) supplied by the caller
inline cplx zeta_residual(const ZetaMap& zm, const CHFParams& p, double z,
                          cplx rhs) {
  const cplx zeta = zm.value(z);
  const cplx zp = zm.d1(z);
  if (zeta == 0.0 || zp == 0.0) {
    throw DomainError("zeta_residual: zeta or dzeta/dz vanishes");
  }
  const cplx zpp = zm.d2(z);
  const cplx zppp = zm.d3(z);
  const cplx bracket =
      1.0 + 2.0 * (2.0 * p.a - p.b) / zeta + p.b * (p.b - 2.0) / (zeta * zeta);
  return zp * zp * bracket + 3.0 * (zpp / zp) * (zpp / zp) - 2.0 * zppp / zp -
         rhs;
}

// g(z) = -(1/2)(1 + gamma/zeta) zeta' + (1/2) zeta''/zeta'
inline cplx compute_g(const ZetaMap& zm, cplx gamma_c, double z) {
  const cplx zp = zm.d1(z);
  if (zp == 0.0) throw DomainError("compute_g: stationary point of zeta");
  const cplx zeta = zm.value(z);
  if (zeta == 0.0 && gamma_c != 0.0) {
    throw DomainError("compute_g: zeta = 0 with gamma != 0");
  }
  cplx term = zp;
  if (gamma_c != 0.0) term += gamma_c * zp / zeta;
  return -0.5 * term + 0.5 * zm.d2(z) / zp;
}

// h(z) = e^(-zeta/2) zeta^(b/2) (dzeta/dz)^(-1/2), overall constant fixed
// to 1; its global phase is immaterial downstream
inline cplx compute_h(const ZetaMap& zm, cplx b, double z) {
  const cplx zp = zm.d1(z);
  if (zp == 0.0) throw DomainError("compute_h: stationary point of zeta");
  cplx zeta = zm.value(z);
  if (zeta.imag() == 0.0) zeta = cplx(zeta.real(), 0.0);
  cplx zpc = zp;
  if (zpc.imag() == 0.0) zpc = cplx(zpc.real(), 0.0);
  return std::exp(-0.5 * zeta) * detail::principal_pow(zeta, 0.5 * b) *
         detail::principal_pow(zpc, -0.5);
}

}  // namespace chfact
