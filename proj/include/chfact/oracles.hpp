#pragma once

// Independent reference functions for the cross-checks: Bessel J_m,
// spherical j_l and Airy Ai from their own power series (double-double
// accumulated, the alternating sums cancel hard at moderate argument), and
// modified K_nu from its integral representation
//   K_nu(x) = int_0^inf e^(-x cosh t) cosh(nu t) dt   (DLMF 10.32.9).
//
// Deliberately self-contained: nothing here touches the confluent
// hypergeometric kernel these oracles are used to check.

#include <cmath>

#include "chfact/dd.hpp"
#include "chfact/errors.hpp"

namespace chfact::oracles {

inline double bessel_j(int m, double x) {
  if (m < 0) {
    return (m % 2 == 0 ? 1.0 : -1.0) * bessel_j(-m, x);  // DLMF 10.4.1
  }
  const double half = 0.5 * x;
  dd term = 1.0;
  for (int j = 1; j <= m; ++j) term = term * dd(half) / dd(static_cast<double>(j));
  dd sum = term;
  const dd x24 = dd(half) * dd(half);
  for (int s = 0; s < 400; ++s) {
    term = -term * x24 / dd(static_cast<double>(s + 1) * static_cast<double>(m + s + 1));
    sum += term;
    if (std::abs(term.hi) < 1e-24 * (std::abs(sum.hi) + 1e-30) && s > 4) break;
  }
  return sum.value();
}

inline double spherical_j(int l, double x) {
  if (l < 0) throw DomainError("spherical_j: l >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  // x^l/(2l+1)!! sum_s (-x^2/2)^s / (s! (2l+3)(2l+5)...(2l+2s+1))
  dd pre = 1.0;
  for (int j = 1; j <= l; ++j) pre = pre * dd(x) / dd(static_cast<double>(2 * j + 1));
  dd term = pre, sum = pre;
  const dd x22 = dd(0.5) * dd(x) * dd(x);
  for (int s = 0; s < 400; ++s) {
    term = -term * x22 / dd(static_cast<double>(s + 1) * static_cast<double>(2 * l + 2 * s + 3));
    sum += term;
    if (std::abs(term.hi) < 1e-24 * (std::abs(sum.hi) + 1e-30) && s > 4) break;
  }
  return sum.value();
}

// Maclaurin pair Ai = c1 f - c2 g (DLMF 9.4.1); adequate for |z| up to ~10,
// which is all the pointwise comparisons use
inline double airy_ai(double z) {
  const double c1 = 0.35502805388781723926;  // 3^(-2/3)/Gamma(2/3)
  const double c2 = 0.25881940379280679841;  // 3^(-1/3)/Gamma(1/3)
  const dd z3 = dd(z) * dd(z) * dd(z);
  dd f = 1.0, tf = 1.0;
  dd g = z, tg = z;
  for (int k = 0; k < 600; ++k) {
    tf = tf * z3 / dd(static_cast<double>(3 * k + 2) * static_cast<double>(3 * k + 3));
    f += tf;
    tg = tg * z3 / dd(static_cast<double>(3 * k + 3) * static_cast<double>(3 * k + 4));
    g += tg;
    if (std::abs(tf.hi) < 1e-26 * (std::abs(f.hi) + 1e-30) &&
        std::abs(tg.hi) < 1e-26 * (std::abs(g.hi) + 1e-30) && k > 4) {
      break;
    }
  }
  return (dd(c1) * f - dd(c2) * g).value();
}

inline double bessel_k(double nu, double x) {
  if (x <= 0.0) throw DomainError("bessel_k: x > 0 required");
  // e^(-x cosh T) below 1e-23 relative to the t=0 height
  const double T = std::acosh(1.0 + 53.0 / x);
  const int n = 20000;  // Simpson intervals, integrand is entire in t
  const double h = T / n;
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); };
  double sum = f(0.0) + f(T);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace chfact::oracles
