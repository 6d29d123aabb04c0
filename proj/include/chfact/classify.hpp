#pragma once

// Candidate classification: build the superpotential and reduced
// wavefunction for each table row, test superpotential reality on an
// interior grid and wavefunction boundedness at both domain ends, and emit
// a verdict.  Origin behavior comes from the small-zeta limit forms (DLMF
// 13.2.16-13.2.22), not from sampling near the singular point; the behavior
// at infinity comes from the large-zeta expansions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "chfact/candidates.hpp"
#include "chfact/chf.hpp"
#include "chfact/systems.hpp"

namespace chfact {

namespace detail {

inline EvalPolicy classify_policy() {
  EvalPolicy pol;
  pol.on_cut = OnCut::LimitFromAbove;
  return pol;
}

struct SeriesEval {
  cplx G;
  cplx dG;  // dG/dzeta
};

inline SeriesEval eval_series(const Candidate& c, cplx zeta, const EvalPolicy& pol) {
  const CHFParams p{c.series_a, c.series_b};
  switch (c.series) {
    case SeriesKind::KummerM:
      return {eval_M(p, zeta, pol), eval_dF(CHFKind::M, p, zeta, pol)};
    case SeriesKind::TricomiU:
      return {eval_U(p, zeta, pol), eval_dF(CHFKind::U, p, zeta, pol)};
    case SeriesKind::LogSecondB1: {
      // derivative by central difference; this row only ever needs the
      // growth of |G|, never tight derivative accuracy
      const cplx G = second_solution_b1_npi(c.log_m, zeta, pol);
      const double h = 1e-6 * std::max(1.0, std::abs(zeta));
      const cplx dG = (second_solution_b1_npi(c.log_m, zeta + h, pol) -
                       second_solution_b1_npi(c.log_m, zeta - h, pol)) /
                      (2.0 * h);
      return {G, dG};
    }
  }
  throw Error("unreachable");
}

}  // namespace detail

// u(z) = e^(-zeta/2) zeta^p (zeta')^(-1/2) G(zeta(z)), constant fixed to 1
inline cplx wavefunction_reduced(const Candidate& c, double z) {
  const EvalPolicy pol = detail::classify_policy();
  const cplx zeta = c.zm.value(z);
  const cplx G = detail::eval_series(c, zeta, pol).G;
  return compute_h(c.zm, 2.0 * c.prefactor_exponent, z) * G;
}

// W(z) = -d/dz ln u = zeta'/2 - p zeta'/zeta + zeta''/(2 zeta') - zeta' G'/G
inline cplx superpotential(const Candidate& c, double z) {
  const EvalPolicy pol = detail::classify_policy();
  const cplx zeta = c.zm.value(z);
  const cplx zp = c.zm.d1(z);
  if (zeta == 0.0 || zp == 0.0) throw DomainError("superpotential: zeta or zeta' vanishes");
  const auto [G, dG] = detail::eval_series(c, zeta, pol);
  const cplx ratio = dG / G;
  const cplx W = 0.5 * zp - c.prefactor_exponent * zp / zeta +
                 0.5 * c.zm.d2(z) / zp - zp * ratio;
  if (!(std::abs(W) < 1e9)) {
    throw PoleAtNode("superpotential pole near a wavefunction node at z = " + std::to_string(z));
  }
  return W;
}

// dW/dz, with G'' eliminated through the confluent equation
// zeta G'' = ga G - (gb - zeta) G'
inline cplx superpotential_derivative(const Candidate& c, double z) {
  const EvalPolicy pol = detail::classify_policy();
  const cplx zeta = c.zm.value(z);
  const cplx zp = c.zm.d1(z);
  const cplx zpp = c.zm.d2(z);
  const cplx zppp = c.zm.d3(z);
  const auto [G, dG] = detail::eval_series(c, zeta, pol);
  const cplx r = dG / G;
  const cplx ga = (c.series == SeriesKind::LogSecondB1) ? cplx(-c.log_m) : c.series_a;
  const cplx gb = (c.series == SeriesKind::LogSecondB1) ? cplx(1.0) : c.series_b;
  const cplx r2 = (ga * 1.0 + (zeta - gb) * r) / zeta;  // G''/G
  const cplx p = c.prefactor_exponent;
  cplx w = 0.5 * zpp;
  w -= p * (zpp / zeta - (zp / zeta) * (zp / zeta));
  w += 0.5 * (zppp / zp - (zpp / zp) * (zpp / zp));
  w -= zpp * r + zp * zp * (r2 - r * r);
  return w;
}

enum class InfinityGrowth { Decaying, Oscillatory, ExponentialGrowth };

inline const char* to_string(InfinityGrowth g) {
  switch (g) {
    case InfinityGrowth::Decaying: return "Decaying";
    case InfinityGrowth::Oscillatory: return "Oscillatory";
    case InfinityGrowth::ExponentialGrowth: return "ExponentialGrowth";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::Accepted;
  double max_im_W = 0.0;
  cplx origin_exponent{0.0, 0.0};  // leading exponent of the physical psi at q -> 0
  bool origin_log_divergence = false;
  InfinityGrowth infinity_growth = InfinityGrowth::Oscillatory;
};

namespace detail {

struct OriginBehavior {
  cplx exponent_u;  // leading exponent of u(z) ~ z^e
  bool log_term = false;
};

inline OriginBehavior origin_behavior(const Candidate& c) {
  OriginBehavior ob;
  ob.exponent_u = c.prefactor_exponent;
  if (c.series == SeriesKind::TricomiU) {
    const cplx ga = c.series_a, gb = c.series_b;
    if (is_nonpositive_integer(ga)) {
      // polynomial, finite nonzero limit
    } else if (gb == 1.0) {
      ob.log_term = true;  // DLMF 13.2.19
    } else if (gb.real() > 1.0) {
      ob.exponent_u += 1.0 - gb;  // DLMF 13.2.16/13.2.17
    }
    // Re gb < 1: finite limit Gamma(1-b)/Gamma(1+a-b), DLMF 13.2.22
  } else if (c.series == SeriesKind::LogSecondB1) {
    ob.log_term = true;
  }
  return ob;
}

inline double coordinate_weight(Coordinate c) {
  switch (c) {
    case Coordinate::Cartesian: return 0.0;
    case Coordinate::PlanePolar: return 0.5;   // psi = u / sqrt(rho)
    case Coordinate::Spherical: return 1.0;    // psi = u / r
  }
  return 0.0;
}

inline bool origin_acceptable(const Candidate& c, const OriginBehavior& ob) {
  if (!c.system.radial()) return true;
  if (ob.log_term) return false;
  // plane polar: psi bounded needs Re e_u >= 1/2; spherical: u = r psi must
  // vanish, Re e_u > 0 (regular rows sit at l+1, irregular at -l)
  const double min_exp =
      c.system.coordinate == Coordinate::PlanePolar ? 0.5 : 1e-9;
  return ob.exponent_u.real() >= min_exp - 1e-9;
}

// growth at a domain end where |zeta| -> inf with Re zeta -> s*inf
inline InfinityGrowth growth_real_end(const Candidate& c, double s) {
  if (c.series == SeriesKind::LogSecondB1) {
    return s > 0 ? InfinityGrowth::ExponentialGrowth : InfinityGrowth::Decaying;
  }
  const bool poly = is_nonpositive_integer(c.series_a);
  if (poly) {
    return s > 0 ? InfinityGrowth::Decaying : InfinityGrowth::ExponentialGrowth;
  }
  if (c.series == SeriesKind::KummerM) {
    if (is_nonpositive_integer(c.series_b - c.series_a)) {
      // M = e^zeta * polynomial, u ~ e^{+zeta/2}
      return s > 0 ? InfinityGrowth::ExponentialGrowth : InfinityGrowth::Decaying;
    }
    return InfinityGrowth::ExponentialGrowth;  // e^{|Re zeta|/2} either way
  }
  // U ~ zeta^{-a}: u ~ e^{-zeta/2} * algebraic
  return s > 0 ? InfinityGrowth::Decaying : InfinityGrowth::ExponentialGrowth;
}

// growth at an end where zeta runs to infinity along the imaginary axis:
// the exponentials are pure phases, only the algebraic envelope is left
inline InfinityGrowth growth_imaginary_end(const Candidate& c) {
  double zeta_prime_exponent = 0.0;  // (zeta')^{-1/2} contribution per power of zeta
  if (c.zm.family == ZetaFamily::Power) {
    zeta_prime_exponent = -(c.zm.d - 1.0) / (2.0 * c.zm.d);
  }
  double e;
  if (c.series == SeriesKind::TricomiU) {
    e = (c.prefactor_exponent - c.series_a).real();
  } else {
    e = std::max((c.prefactor_exponent + c.series_a - c.series_b).real(),
                 (c.prefactor_exponent - c.series_a).real());
  }
  e += zeta_prime_exponent;
  if (e > 1e-9) return InfinityGrowth::ExponentialGrowth;
  if (e < -1e-9) return InfinityGrowth::Decaying;
  return InfinityGrowth::Oscillatory;
}

inline InfinityGrowth classify_end(const Candidate& c, double dir) {
  switch (c.zm.family) {
    case ZetaFamily::Linear: {
      const cplx lim = c.zm.c * dir;
      if (std::abs(lim.real()) > 1e-12) {
        return growth_real_end(c, lim.real() > 0 ? 1.0 : -1.0);
      }
      return growth_imaginary_end(c);
    }
    case ZetaFamily::Power: {
      if (dir > 0) {
        return growth_real_end(c, c.zm.c.real() > 0 ? 1.0 : -1.0);
      }
      return growth_imaginary_end(c);  // (-z)^{3/2} runs along the imaginary axis
    }
    case ZetaFamily::Exponential: {
      if (dir > 0) return InfinityGrowth::Oscillatory;  // zeta -> 0, bounded phases
      return growth_real_end(c, c.zm.c.real() > 0 ? 1.0 : -1.0);
    }
  }
  throw Error("unreachable");
}

struct ScanWindow {
  double lo, hi;
};

inline ScanWindow reality_window(const SystemSpec& s) {
  switch (s.name) {
    case SystemName::Free1D: return {0.15, 2.99};
    case SystemName::Free2D:
    case SystemName::Free3D:
    case SystemName::HydrogenContinuum: return {0.25, 18.0};
    case SystemName::Linear1D: return {-6.0, 3.0};
    case SystemName::Morse1D: return {-1.5, 4.0};
  }
  throw UnsupportedSystem("reality_window");
}

}  // namespace detail

// max |Im W| over an interior grid, skipping the poles at wavefunction nodes
inline double max_imag_superpotential(const Candidate& c, int n = 200) {
  const auto [lo, hi] = detail::reality_window(c.system);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < n; ++i) {
    const double z = lo + (hi - lo) * (i + 0.5) / n;
    try {
      worst = std::max(worst, std::abs(superpotential(c, z).imag()));
      ++used;
    } catch (const PoleAtNode&) {
    } catch (const DomainError&) {
    }
  }
  if (used < n / 4) throw AllPointsNearNodes("superpotential scan found too few usable points");
  return worst;
}

inline Verdict classify(const Candidate& c) {
  Verdict v;
  v.max_im_W = max_imag_superpotential(c);

  const auto ob = detail::origin_behavior(c);
  v.origin_log_divergence = ob.log_term && c.system.radial();
  v.origin_exponent = ob.exponent_u - detail::coordinate_weight(c.system.coordinate);
  const bool origin_ok = detail::origin_acceptable(c, ob);

  InfinityGrowth worst = InfinityGrowth::Decaying;
  auto merge = [&worst](InfinityGrowth g) {
    if (static_cast<int>(g) > static_cast<int>(worst)) worst = g;
  };
  if (c.system.radial()) {
    merge(detail::classify_end(c, +1.0));
  } else {
    merge(detail::classify_end(c, +1.0));
    merge(detail::classify_end(c, -1.0));
  }
  v.infinity_growth = worst;

  const bool real_ok = v.max_im_W <= 1e-9;
  const bool infinity_ok = worst != InfinityGrowth::ExponentialGrowth;
  if (real_ok && origin_ok && infinity_ok) {
    v.status = VerdictStatus::Accepted;
    return v;
  }
  for (VerdictStatus cited : rejection_citation_order(c.system.name)) {
    const bool failed =
        (cited == VerdictStatus::RejectedImaginaryW && !real_ok) ||
        (cited == VerdictStatus::RejectedDivergesAtOrigin && !origin_ok) ||
        (cited == VerdictStatus::RejectedDivergesAtInfinity && !infinity_ok);
    if (failed) {
      v.status = cited;
      return v;
    }
  }
  throw Error("classify: inconsistent failure bookkeeping");
}

inline VerdictTable classify_system(const SystemSpec& s, double k) {
  VerdictTable t;
  t.system = s.name;
  for (const Candidate& c : solve_parameters(s, k)) {
    t.rows.push_back({c.case_id, classify(c).status});
  }
  return t;
}

struct Mismatch {
  int case_id;
  VerdictStatus computed;
  VerdictStatus expected;
};

struct MismatchReport {
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

inline MismatchReport compare_to_expected(const VerdictTable& computed,
                                          const VerdictTable& golden) {
  MismatchReport rep;
  const size_t n = std::min(computed.rows.size(), golden.rows.size());
  for (size_t i = 0; i < n; ++i) {
    if (computed.rows[i].status != golden.rows[i].status) {
      rep.mismatches.push_back(
          {computed.rows[i].case_id, computed.rows[i].status, golden.rows[i].status});
    }
  }
  if (computed.rows.size() != golden.rows.size()) {
    rep.mismatches.push_back({-1, VerdictStatus::Accepted, VerdictStatus::Accepted});
  }
  return rep;
}

}  // namespace chfact
