#pragma once

// Identity battery for the kernel: the Kummer transformation, the two
// contiguous relations of the Coulomb reality argument, the derivative
// identity with its beta table, the gamma/delta relation, the U reflection,
// and the series/asymptotic seam.  Residuals are scaled by the largest term
// entering each identity.  Derivatives are eliminated through the standard
// relations dM/dz = (a/b) M(a+1,b+1,z) and dU/dz = -a U(a+1,b+1,z)
// (DLMF 13.3.15, 13.3.22), which keeps every battery purely algebraic.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "chfact/chf.hpp"

namespace chfact {

struct IdentityReport {
  std::string name;
  int samples = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace detail {

class BoxSampler {
 public:
  explicit BoxSampler(unsigned seed) : rng_(seed) {}

  cplx any(double radius = 10.0) {
    std::uniform_real_distribution<double> u(-radius / std::sqrt(2.0),
                                             radius / std::sqrt(2.0));
    return {u(rng_), u(rng_)};
  }

  // keeps a margin from the integer lattice on the real axis so no sample
  // sits in a pole or a cancellation-dominated sliver next to one
  cplx off_integers(double radius = 10.0, double margin = 0.15) {
    for (;;) {
      const cplx z = any(radius);
      if (std::abs(z.imag()) > margin) return z;
      const double d = std::abs(z.real() - std::round(z.real()));
      if (d > margin) return z;
    }
  }

  cplx off_cut(double radius = 10.0) {
    for (;;) {
      const cplx z = any(radius);
      if (std::abs(z) < 0.3) continue;
      if (z.real() < 0.5 && std::abs(z.imag()) < 0.2) continue;
      return z;
    }
  }

  double real(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng_);
  }

 private:
  std::mt19937 rng_;
};

inline void track(IdentityReport& rep, cplx residual, double scale) {
  rep.worst = std::max(rep.worst, std::abs(residual) / scale);
  ++rep.samples;
}

}  // namespace detail

inline std::vector<IdentityReport> run_identity_battery(int samples = 1000,
                                                        unsigned seed = 7391) {
  std::vector<IdentityReport> out;
  const EvalPolicy pol;

  {  // Kummer transformation M(a,b,z) = e^z M(b-a,b,-z), DLMF 13.2.39
    IdentityReport rep{"kummer-transformation", 0, 0.0, 1e-11, false};
    detail::BoxSampler s(seed);
    for (int i = 0; i < samples; ++i) {
      const cplx a = s.any(), b = s.off_integers(), z = s.any();
      const cplx lhs = eval_M({a, b}, z, pol);
      const cplx rhs = std::exp(z) * eval_M({b - a, b}, -z, pol);
      detail::track(rep, lhs - rhs, std::abs(lhs));
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  {  // (a-b) M(a,b+1,z) + b M(a,b,z) - a M(a+1,b+1,z) = 0, DLMF 13.3.3
    IdentityReport rep{"contiguous-ident0", 0, 0.0, 1e-11, false};
    detail::BoxSampler s(seed + 1);
    for (int i = 0; i < samples; ++i) {
      const cplx a = s.any(), b = s.off_integers(), z = s.any();
      const cplx t1 = (a - b) * eval_M({a, b + 1.0}, z, pol);
      const cplx t2 = b * eval_M({a, b}, z, pol);
      const cplx t3 = a * eval_M({a + 1.0, b + 1.0}, z, pol);
      const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
      detail::track(rep, t1 + t2 - t3, scale);
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  {  // a M(a+1,b+1,z) + a* M(a,b+1,z) = b M(a,b,z) for Re a = b/2, b real
    IdentityReport rep{"contiguous-ident1", 0, 0.0, 1e-11, false};
    detail::BoxSampler s(seed + 2);
    for (int i = 0; i < samples; ++i) {
      double b = s.real(-9.5, 9.5);
      if (std::abs(b - std::round(b)) < 0.15 && b < 0.5) b += 0.31;
      const cplx a{0.5 * b, s.real(-5.0, 5.0)};
      const cplx z = s.any();
      const cplx t1 = a * eval_M({a + 1.0, b + 1.0}, z, pol);
      const cplx t2 = std::conj(a) * eval_M({a, b + 1.0}, z, pol);
      const cplx t3 = b * eval_M({a, cplx(b)}, z, pol);
      const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-30});
      detail::track(rep, t1 + t2 - t3, scale);
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  // derivative identity F' = F - beta F(a,b+1,.) against the standard
  // derivative relations, one battery per kind; residuals are scored
  // against the largest term entering either evaluation
  for (CHFKind kind : {CHFKind::M, CHFKind::U, CHFKind::Mtilde}) {
    const char* names[] = {"derivative-beta-M", "derivative-beta-U",
                           "derivative-beta-Mtilde"};
    IdentityReport rep{names[static_cast<int>(kind)], 0, 0.0, 1e-11, false};
    detail::BoxSampler s(seed + 3 + static_cast<int>(kind));
    for (int i = 0; i < samples; ++i) {
      const cplx a = s.off_integers(), b = s.off_integers();
      const cplx z = kind == CHFKind::U ? s.off_cut() : s.any();
      const CHFParams p{a, b};
      TracedValue direct;  // derivative via DLMF 13.3.15 / 13.3.22
      TracedValue f, fb1;
      switch (kind) {
        case CHFKind::M:
          direct = eval_M_traced({a + 1.0, b + 1.0}, z, pol);
          direct.value *= a / b;
          direct.scale *= std::abs(a / b);
          f = eval_M_traced({a, b}, z, pol);
          fb1 = eval_M_traced({a, b + 1.0}, z, pol);
          break;
        case CHFKind::U:
          direct = eval_U_traced({a + 1.0, b + 1.0}, z, pol);
          direct.value *= -a;
          direct.scale *= std::abs(a);
          f = eval_U_traced({a, b}, z, pol);
          fb1 = eval_U_traced({a, b + 1.0}, z, pol);
          break;
        case CHFKind::Mtilde: {
          const cplx ga = 1.0 + a - b, gb = 2.0 - b;
          direct = eval_M_traced({ga + 1.0, gb + 1.0}, z, pol);
          direct.value *= ga / gb;
          direct.scale *= std::abs(ga / gb);
          f = eval_M_traced({ga, gb}, z, pol);
          fb1 = eval_M_traced({ga, gb + 1.0}, z, pol);
          break;
        }
      }
      const cplx beta = beta_coefficient(kind, p);
      const cplx via_beta = f.value - beta * fb1.value;
      const double scale = std::max(
          {f.scale, std::abs(beta) * fb1.scale, direct.scale, 1e-30});
      detail::track(rep, via_beta - direct.value, scale);
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  // z F'(a,b+1,z) + gamma F(a,b+1,z) - delta F(a,b,z) = 0
  for (CHFKind kind : {CHFKind::M, CHFKind::U, CHFKind::Mtilde}) {
    const char* names[] = {"recurrence-gamma-delta-M", "recurrence-gamma-delta-U",
                           "recurrence-gamma-delta-Mtilde"};
    IdentityReport rep{names[static_cast<int>(kind)], 0, 0.0, 1e-11, false};
    detail::BoxSampler s(seed + 6 + static_cast<int>(kind));
    for (int i = 0; i < samples; ++i) {
      const cplx a = s.off_integers(), b = s.off_integers();
      const cplx z = kind == CHFKind::U ? s.off_cut() : s.any();
      const CHFParams p{a, b};
      const cplx g = gamma_coefficient(kind, p);
      const cplx d = delta_coefficient(kind, p);
      TracedValue dFb1, fb1, f;
      switch (kind) {
        case CHFKind::M:
          dFb1 = eval_M_traced({a + 1.0, b + 2.0}, z, pol);
          dFb1.value *= a / (b + 1.0);
          dFb1.scale *= std::abs(a / (b + 1.0));
          fb1 = eval_M_traced({a, b + 1.0}, z, pol);
          f = eval_M_traced({a, b}, z, pol);
          break;
        case CHFKind::U:
          dFb1 = eval_U_traced({a + 1.0, b + 2.0}, z, pol);
          dFb1.value *= -a;
          dFb1.scale *= std::abs(a);
          fb1 = eval_U_traced({a, b + 1.0}, z, pol);
          f = eval_U_traced({a, b}, z, pol);
          break;
        case CHFKind::Mtilde: {
          const cplx ga = 1.0 + a - b, gb1 = 3.0 - b;
          dFb1 = eval_M_traced({ga + 1.0, gb1 + 1.0}, z, pol);
          dFb1.value *= ga / gb1;
          dFb1.scale *= std::abs(ga / gb1);
          fb1 = eval_M_traced({ga, gb1}, z, pol);
          f = eval_M_traced({ga, gb1 - 1.0}, z, pol);
          break;
        }
      }
      const cplx t1 = z * dFb1.value;
      const cplx t2 = g * fb1.value;
      const cplx t3 = d * f.value;
      const double scale = std::max({std::abs(z) * dFb1.scale,
                                     std::abs(g) * fb1.scale,
                                     std::abs(d) * f.scale, 1e-30});
      detail::track(rep, t1 + t2 - t3, scale);
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  {  // U(a,b,z) = z^{1-b} U(1+a-b, 2-b, z), DLMF 13.2.40
    IdentityReport rep{"tricomi-reflection", 0, 0.0, 1e-10, false};
    detail::BoxSampler s(seed + 9);
    for (int i = 0; i < samples; ++i) {
      const cplx a = s.off_integers(), b = s.off_integers();
      const cplx z = s.off_cut();
      const TracedValue lhs = eval_U_traced({a, b}, z, pol);
      const cplx pre = detail::principal_pow(z, 1.0 - b);
      const TracedValue rhs = eval_U_traced({1.0 + a - b, 2.0 - b}, z, pol);
      const double scale =
          std::max({lhs.scale, std::abs(pre) * rhs.scale, std::abs(lhs.value)});
      detail::track(rep, lhs.value - pre * rhs.value, scale);
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  {  // series vs large-|z| expansion at the crossover +- 10%
    IdentityReport rep{"series-asymptotic-seam", 0, 0.0, 1e-8, false};
    detail::BoxSampler s(seed + 10);
    for (int i = 0; i < samples / 4; ++i) {
      const cplx a = s.off_integers(3.0), b = s.off_integers(3.0);
      for (double r : {0.9 * pol.asymptotic_crossover, 1.1 * pol.asymptotic_crossover}) {
        const double phi = s.real(-1.4, 1.4);  // stay off the negative axis
        const cplx z = r * std::exp(cplx(0.0, phi));
        const cplx via_series = detail::eval_M_series(a, b, z, pol);
        const auto via_asym = detail::eval_M_asymptotic(a, b, z, pol, 1e-9);
        if (!via_asym) continue;
        detail::track(rep, via_series - *via_asym, std::abs(via_series));
      }
    }
    rep.passed = rep.worst <= rep.tolerance;
    out.push_back(rep);
  }

  return out;
}

}  // namespace chfact
