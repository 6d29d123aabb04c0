#pragma once

// Complex log-gamma and digamma on the principal branch (cut along
// (-inf, 0]).  Stirling series after an argument push to Re z >= 12; for
// Re z < 1/2 the reflection formula with Kolbig's log-sin bookkeeping keeps
// the branch principal (K.S. Kolbig, Comp. Phys. Comm. 4, 221 (1972), the
// same scheme as CERNLIB CLOGAM).

#include <cmath>
#include <complex>

#include "chfact/errors.hpp"

namespace chfact {

using cplx = std::complex<double>;

inline bool is_nonpositive_integer(const cplx& z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

namespace detail {

// B_{2n} / (2n (2n-1)), n = 1..9
inline constexpr double kStirlingLogGamma[] = {
    1.0 / 12.0,       -1.0 / 360.0,       1.0 / 1260.0,
    -1.0 / 1680.0,    1.0 / 1188.0,       -691.0 / 360360.0,
    1.0 / 156.0,      -3617.0 / 122400.0, 43867.0 / 244188.0,
};

// B_{2n} / (2n), n = 1..8
inline constexpr double kStirlingDigamma[] = {
    1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0,
};

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2
inline constexpr double kLogPi = 1.1447298858494001741;
inline constexpr double kPi = 3.14159265358979323846;

// Stirling region: Re z >= 12 or |Im z| >= 12 (post-reflection arguments only)
inline cplx log_gamma_stirling(cplx z) {
  const cplx lz = std::log(z);
  cplx sum = (z - 0.5) * lz - z + kHalfLog2Pi;
  const cplx z2 = z * z;
  cplx zp = z;
  for (double c : kStirlingLogGamma) {
    sum += c / zp;
    zp *= z2;
  }
  return sum;
}

// log(sin(pi z)) on the branch that makes the reflection formula return the
// principal log-gamma; valid for Im z >= 0
inline cplx log_sin_pi_upper(cplx z) {
  if (z.imag() > 110.0) {
    // sin(pi z) ~ exp(-i pi z) * i/2, avoids cosh overflow
    return cplx(0.0, -kPi) * z + cplx(-0.69314718055994530942, 0.5 * kPi);
  }
  const double n = std::floor(z.real());
  const cplx eps = z - n;
  return std::log(std::sin(kPi * eps)) - cplx(0.0, kPi * n);
}

}  // namespace detail

inline cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw PoleAtNonPositiveInteger("log_gamma pole at z = " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    // reflection; conjugate into the upper half plane first
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    return detail::kLogPi - detail::log_sin_pi_upper(z) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (z.real() < 12.0 && std::abs(z.imag()) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return detail::log_gamma_stirling(z) - shift;
}

// 1/Gamma(z), entire; zero at the poles of Gamma
inline cplx inv_gamma(const cplx& z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

inline cplx gamma_fn(const cplx& z) {
  if (is_nonpositive_integer(z)) {
    throw PoleAtNonPositiveInteger("gamma pole at z = " + std::to_string(z.real()));
  }
  return std::exp(log_gamma(z));
}

inline cplx digamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw PoleAtNonPositiveInteger("digamma pole at z = " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z); cot is single valued, no branch care
    cplx cot;
    if (std::abs(z.imag()) > 100.0) {
      cot = cplx(0.0, z.imag() > 0.0 ? -1.0 : 1.0);
    } else {
      const cplx pz = detail::kPi * z;
      cot = std::cos(pz) / std::sin(pz);
    }
    return digamma(1.0 - z) - detail::kPi * cot;
  }
  cplx shift = 0.0;
  while (z.real() < 12.0 && std::abs(z.imag()) < 12.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  const cplx inv2 = 1.0 / (z * z);
  cplx sum = std::log(z) - 0.5 / z;
  cplx zp = inv2;
  for (double c : detail::kStirlingDigamma) {
    sum -= c * zp;
    zp *= inv2;
  }
  return sum - shift;
}

}  // namespace chfact
