#pragma once

// Confluent hypergeometric kernel: complex-parameter evaluation of the
// Kummer function M(a,b,z), the Tricomi function U(a,b,z), and the second
// Frobenius solution Mt(a,b,z) = z^(1-b) M(1+a-b, 2-b, z), plus the
// derivative and contiguous relations the factorization machinery needs.
//
// Evaluation strategy:
//   M: power series with double-double accumulation below the crossover
//      (Kummer-transformed to Re z >= 0 first, DLMF 13.2.39), the large-|z|
//      expansion DLMF 13.7.1/13.7.2 above it, each piece truncated at its
//      smallest term.
//   U: exact finite sum for a a non-positive integer (DLMF 13.2.7);
//      reflection U(a,b,z) = z^(1-b) U(1+a-b,2-b,z) (DLMF 13.2.40) when that
//      lands on the finite sum or when b is an integer <= 0; the logarithmic
//      series for integer b >= 1 (DLMF 13.2.9); the connection formula
//      through two M series (DLMF 13.2.42, Slater sec. 1.3) otherwise; the
//      |z| -> inf expansion DLMF 13.7.3 above the crossover.
//
// All fractional powers and logarithms are principal-branch with the cut
// along (-inf, 0].  Points exactly on the cut either raise
// BranchCutAmbiguity or take the limit from above, per EvalPolicy.

#include <cmath>
#include <complex>
#include <optional>

#include "chfact/dd.hpp"
#include "chfact/errors.hpp"
#include "chfact/gamma.hpp"

namespace chfact {

enum class CHFKind { M, U, Mtilde };

struct CHFParams {
  cplx a;
  cplx b;
};

enum class OnCut { Error, LimitFromAbove };

struct EvalPolicy {
  double series_tol = 1e-15;
  int max_terms = 10000;
  double asymptotic_crossover = 30.0;
  OnCut on_cut = OnCut::Error;
};

namespace detail {

inline cplx canonical(cplx z, const EvalPolicy& pol, const char* who) {
  if (z.imag() == 0.0) {
    if (z.real() < 0.0 && pol.on_cut == OnCut::Error) {
      throw BranchCutAmbiguity(std::string(who) + ": argument on the branch cut (-inf,0]");
    }
    return {z.real(), 0.0};  // squash -0.0 so the cut limit comes from above
  }
  return z;
}

inline cplx principal_log(cplx z) { return std::log(z); }

inline cplx principal_pow(cplx z, cplx p) {
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log(z));
}

// Kummer series sum_{n} (a)_n/(b)_n z^n/n!, double-double accumulation.
// The term recurrence is carried in cdd as well; with a double-only
// recurrence the accumulated term error re-inflates exactly the
// cancellation the cdd sum is there to absorb.
inline cplx m_series_raw(cplx a, cplx b, cplx z, const EvalPolicy& pol,
                         double* max_term = nullptr) {
  cdd sum{1.0, 0.0};
  cdd term{1.0, 0.0};
  const cdd zz{z};
  const cdd aa{a}, bb{b};
  double peak = 1.0;
  int quiet = 0;
  for (int n = 0; n < pol.max_terms; ++n) {
    const double nn = static_cast<double>(n);
    const cdd num = shifted(aa, nn) * zz;
    const cdd den = shifted(bb, nn) * cdd(nn + 1.0);
    term *= num / den;
    sum += term;
    const double tmag = abs_estimate(term);
    peak = std::max(peak, tmag);
    if (tmag < pol.series_tol * abs_estimate(sum)) {
      if (++quiet >= 3) {
        if (max_term) *max_term = peak;
        return sum.value();
      }
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("M series did not converge");
}

inline cplx eval_M_series(cplx a, cplx b, cplx z, const EvalPolicy& pol,
                          double* max_term = nullptr) {
  // transform to Re z >= 0 unless the series already terminates
  if (z.real() < 0.0 && !is_nonpositive_integer(a)) {
    const cplx ez = std::exp(z);
    const cplx v = ez * m_series_raw(b - a, b, -z, pol, max_term);
    if (max_term) *max_term *= std::abs(ez);
    return v;
  }
  return m_series_raw(a, b, z, pol, max_term);
}

// one component sum of the large-|z| expansions, truncated at the smallest
// term; returns the truncation estimate through `err`
inline cplx poincare_sum(cplx p, cplx q, cplx z, int max_terms, double& err) {
  cplx sum = 1.0, term = 1.0;
  double best = 1.0;
  cplx best_sum = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    term *= (p + static_cast<double>(n)) * (q + static_cast<double>(n)) /
            ((static_cast<double>(n) + 1.0) * z);
    const double tmag = std::abs(term);
    sum += term;
    if (tmag < best) {
      best = tmag;
      best_sum = sum;
      if (tmag == 0.0) break;
    } else if (tmag > 4.0 * best) {
      break;  // past the optimal truncation point, terms diverging
    }
  }
  err = best;
  return best_sum;
}

// DLMF 13.7.2 as displayed with the e^{+- i pi a} factor; upper sign for
// Im z >= 0, valid in -pi/2 < +-arg z <= 3pi/2
inline std::optional<cplx> eval_M_asymptotic(cplx a, cplx b, cplx z,
                                             const EvalPolicy&,
                                             double target_rel) {
  const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
  double e1 = 0.0, e2 = 0.0;
  const cplx s1 = poincare_sum(b - a, 1.0 - a, z, 200, e1);
  const cplx s2 = poincare_sum(a, a - b + 1.0, -z, 200, e2);
  const cplx lz = std::log(z);
  const cplx c1 = inv_gamma(a) * std::exp(z + (a - b) * lz);
  const cplx c2 = inv_gamma(b - a) *
                  std::exp(cplx(0.0, s * detail::kPi) * a - a * lz);
  const cplx pre = std::exp(log_gamma(b));
  const cplx val = pre * (c1 * s1 + c2 * s2);
  // the omitted tail can exceed the smallest kept term by a small factor
  const double abs_err =
      4.0 * std::abs(pre) * (std::abs(c1) * e1 + std::abs(c2) * e2);
  if (!(abs_err <= target_rel * std::abs(val))) return std::nullopt;
  return val;
}

// DLMF 13.2.7: U(-m, b, z) for non-negative integer m, exact
inline cplx u_polynomial(int m, cplx b, cplx z, double* peak = nullptr) {
  // (-1)^m sum_s binom(m,s) (b+s)_{m-s} (-z)^s
  cplx sum = 0.0;
  double binom = 1.0, top = 0.0;
  for (int s = 0; s <= m; ++s) {
    cplx poch = 1.0;
    for (int j = 0; j < m - s; ++j) poch *= b + static_cast<double>(s + j);
    const cplx term = binom * poch * principal_pow(-z, static_cast<double>(s));
    top = std::max(top, std::abs(term));
    sum += term;
    binom *= static_cast<double>(m - s) / static_cast<double>(s + 1);
  }
  if (peak) *peak = std::max(top, 1.0);
  return (m % 2 == 0 ? 1.0 : -1.0) * sum;
}

// integer-valued test that is exact for the catalog's parameter arithmetic
inline bool near_int(double x) { return x == std::floor(x); }

// DLMF 13.7.3: U(a,b,z) ~ z^-a sum_n (a)_n (a-b+1)_n / (n! (-z)^n)
inline std::optional<cplx> eval_U_asymptotic(cplx a, cplx b, cplx z,
                                             const EvalPolicy&,
                                             double target_rel) {
  double err = 0.0;
  const cplx s = poincare_sum(a, a - b + 1.0, -z, 200, err);
  if (!(err <= target_rel * std::abs(s))) return std::nullopt;
  return principal_pow(z, -a) * s;
}

// DLMF 13.2.9, b = n+1 with integer n >= 0 and a not a non-positive integer.
// With (n+k)! in the sum the prefactor is (-1)^{n+1}/Gamma(a-n); the finite
// part only appears for n >= 1.
inline cplx eval_U_integer_b(cplx a, int n, cplx z, const EvalPolicy& pol,
                             double* peak = nullptr) {
  const cplx lz = principal_log(z);
  cdd sum{0.0, 0.0};
  double top = 0.0;

  double fact_n = 1.0;  // n!
  for (int j = 2; j <= n; ++j) fact_n *= j;

  cdd term{1.0 / fact_n, 0.0};
  cplx psi_a = digamma(a);
  double psi_1k = -0.57721566490153286061;      // psi(1)
  double psi_nk = psi_1k;                       // psi(n+1)
  for (int j = 1; j <= n; ++j) psi_nk += 1.0 / j;

  int quiet = 0;
  bool converged = false;
  for (int k = 0; k < pol.max_terms && !converged; ++k) {
    const cplx bracket = lz + psi_a - psi_1k - psi_nk;
    sum += term * cdd(bracket);
    top = std::max(top, abs_estimate(term) * std::abs(bracket));
    if (abs_estimate(term) * (std::abs(bracket) + 1.0) <
        pol.series_tol * (abs_estimate(sum) + 1e-300)) {
      converged = ++quiet >= 3;
    } else {
      quiet = 0;
    }
    term *= shifted(cdd(a), static_cast<double>(k)) * cdd(z) /
            cdd(static_cast<double>(k + 1) * static_cast<double>(n + k + 1));
    psi_a += 1.0 / (a + static_cast<double>(k));
    psi_1k += 1.0 / (k + 1.0);
    psi_nk += 1.0 / (n + k + 1.0);
  }
  if (!converged) throw NonConvergence("U integer-b series");
  const cplx logpart_coef =
      ((n + 1) % 2 == 0 ? 1.0 : -1.0) * inv_gamma(a - static_cast<double>(n));
  cdd total = cdd(logpart_coef) * sum;
  top *= std::abs(logpart_coef);

  if (n >= 1) {
    // (n-1)!/Gamma(a) z^{-n} sum_{k<n} (a-n)_k z^k / (k! (1-n)_k)
    cdd fin{1.0, 0.0};
    cdd t{1.0, 0.0};
    for (int k = 0; k < n - 1; ++k) {
      t *= cdd(cplx(a - static_cast<double>(n - k))) * cdd(z) /
           cdd(static_cast<double>(k + 1) * static_cast<double>(1 - n + k));
      fin += t;
    }
    double fact_nm1 = fact_n / n;
    const cplx fin_coef = fact_nm1 * inv_gamma(a) *
                          principal_pow(z, -static_cast<double>(n));
    total += cdd(fin_coef) * fin;
    top = std::max(top, std::abs(fin_coef) * abs_estimate(fin));
  }
  if (peak) *peak = std::max(top, 1e-300);
  return total.value();
}

// U(a,b,x) = 1/Gamma(a) int_0^inf e^(-xt) t^(a-1) (1+t)^(b-a-1) dt
// (DLMF 13.4.4) by a double-exponential substitution t = exp(pi sinh v).
// Used for real parameters with a > 0 at moderate real x, where the
// connection formula loses ~log10(e^x) digits to cancellation and the
// large-x expansion has not converged yet.
inline double u_integral_real(double a, double b, double x) {
  const double h = 0.045;
  double sum = 0.0;
  for (int i = -120; i <= 120; ++i) {
    const double v = i * h;
    const double sh = kPi * std::sinh(v);
    if (sh > 690.0 / 1.0) break;
    const double t = std::exp(sh);
    if (x * t > 700.0) continue;
    const double w = kPi * std::cosh(v) * t;  // dt/dv
    sum += std::exp(-x * t) * std::pow(t, a - 1.0) * std::pow(1.0 + t, b - a - 1.0) * w;
  }
  return sum * h * std::exp(-std::lgamma(a));
}

// forward declaration for the reflection route
inline cplx eval_U_impl(cplx a, cplx b, cplx z, const EvalPolicy& pol,
                        double* peak = nullptr);

// DLMF 13.2.42 connection formula, both M series and the final two-term
// combination accumulated in double-double.  Coefficient accuracy is capped
// by the double-precision log-gamma (~1e-15 relative), which is the floor
// of this route's accuracy in heavily cancelling regions.
inline cplx eval_U_connection(cplx a, cplx b, cplx z, const EvalPolicy& pol,
                              double* peak = nullptr) {
  const cplx c1 = inv_gamma(1.0 + a - b) * std::exp(log_gamma(1.0 - b));
  const cplx c2 = inv_gamma(a) * std::exp(log_gamma(b - 1.0));
  cplx m1, m2;
  double p1 = 0.0, p2 = 0.0;
  if (z.real() >= 0.0) {
    m1 = m_series_raw(a, b, z, pol, &p1);
    m2 = m_series_raw(1.0 + a - b, 2.0 - b, z, pol, &p2);
  } else {
    // route both series through the Kummer transform in lockstep
    const cplx ez = std::exp(z);
    m1 = ez * m_series_raw(b - a, b, -z, pol, &p1);
    m2 = ez * m_series_raw(1.0 - a, 2.0 - b, -z, pol, &p2);
    p1 *= std::abs(ez);
    p2 *= std::abs(ez);
  }
  const cplx zres = principal_pow(z, 1.0 - b);
  const cdd t1 = cdd(c1) * cdd(m1);
  const cdd t2 = cdd(c2 * zres) * cdd(m2);
  if (peak) {
    *peak = std::max({std::abs(c1) * p1, std::abs(c2 * zres) * p2,
                      abs_estimate(t1), abs_estimate(t2), 1e-300});
  }
  return (t1 + t2).value();
}

inline cplx eval_U_impl(cplx a, cplx b, cplx z, const EvalPolicy& pol,
                        double* peak) {
  if (is_nonpositive_integer(a)) {
    return u_polynomial(static_cast<int>(-a.real()), b, z, peak);
  }
  if (is_nonpositive_integer(1.0 + a - b)) {
    const cplx pre = principal_pow(z, 1.0 - b);
    const cplx v = pre * eval_U_impl(1.0 + a - b, 2.0 - b, z, pol, peak);
    if (peak) *peak *= std::abs(pre);
    return v;
  }
  if (std::abs(z) >= pol.asymptotic_crossover) {
    if (auto v = eval_U_asymptotic(a, b, z, pol, 1e-11)) {
      if (peak) *peak = std::abs(*v);
      return *v;
    }
  }
  if (b.imag() == 0.0 && near_int(b.real())) {
    const int bi = static_cast<int>(b.real());
    if (bi >= 1) return eval_U_integer_b(a, bi - 1, z, pol, peak);
    const cplx pre = principal_pow(z, 1.0 - b);
    const cplx v = pre * eval_U_integer_b(1.0 + a - b, 1 - bi, z, pol, peak);
    if (peak) *peak *= std::abs(pre);
    return v;
  }
  if (a.imag() == 0.0 && b.imag() == 0.0 && z.imag() == 0.0 && a.real() > 0.0 &&
      z.real() >= 5.0) {
    const double v = u_integral_real(a.real(), b.real(), z.real());
    if (peak) *peak = std::abs(v);
    return v;
  }
  return eval_U_connection(a, b, z, pol, peak);
}

// second solution of the confluent equation for b = 1, a = -m a non-positive
// integer (cell where M, Mt and U are all proportional); DLMF 13.2.8 form.
// Grows like e^z for z -> +inf, which is what disqualifies it.
inline cplx second_solution_b1_npi(int m, cplx z, const EvalPolicy& pol) {
  const cplx lz = principal_log(z);
  // -sum_{s<=m} (-m)_s/(s!)^2 z^s [ln z + psi(1+m-s) - 2 psi(1+s)]
  cplx first = 0.0;
  cplx t = 1.0;
  double psi_ms = digamma(cplx(1.0 + m)).real();
  double psi_s = -0.57721566490153286061;
  for (int s = 0; s <= m; ++s) {
    first += t * (lz + psi_ms - 2.0 * psi_s);
    if (s == m) break;
    t *= cplx(static_cast<double>(-m + s)) * z /
         (static_cast<double>(s + 1) * static_cast<double>(s + 1));
    psi_ms -= 1.0 / (m - s);  // psi(1+m-s) -> psi(m-s)
    psi_s += 1.0 / (s + 1);
  }
  first = -first;
  // (-1)^{1+m} m! sum_{s>m} (s-1-m)!/(s!)^2 z^s
  cdd second{0.0, 0.0};
  double fact_m = 1.0;
  for (int j = 2; j <= m; ++j) fact_m *= j;
  // s = m+1 term: (0)! / ((m+1)!)^2 z^{m+1}
  double fact_mp1 = fact_m * (m + 1);
  cdd term = cdd(cplx(principal_pow(z, static_cast<double>(m + 1)))) /
             cdd(fact_mp1 * fact_mp1);
  int quiet = 0;
  for (int s = m + 1; s < pol.max_terms; ++s) {
    second += term;
    if (abs_estimate(term) < pol.series_tol * abs_estimate(second)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    term *= cdd(cplx(z * static_cast<double>(s - m))) /
            cdd(static_cast<double>(s + 1) * static_cast<double>(s + 1));
  }
  const double sgn = ((m + 1) % 2 == 0) ? 1.0 : -1.0;
  return first + sgn * fact_m * second.value();
}

}  // namespace detail

inline cplx eval_M(const CHFParams& p, cplx zeta, const EvalPolicy& pol = {}) {
  if (is_nonpositive_integer(p.b)) {
    throw InvalidB("M(a,b,z) undefined for b a non-positive integer");
  }
  if (!(std::isfinite(zeta.real()) && std::isfinite(zeta.imag()))) {
    throw DomainError("eval_M: non-finite argument");
  }
  if (zeta == 0.0) return 1.0;
  if (std::abs(zeta) > pol.asymptotic_crossover) {
    if (auto v = detail::eval_M_asymptotic(p.a, p.b, zeta, pol, 1e-12)) return *v;
    if (std::abs(zeta) > 80.0) {
      throw NonConvergence("eval_M: beyond series range and expansion not converging");
    }
  }
  return detail::eval_M_series(p.a, p.b, zeta, pol);
}

inline cplx eval_U(const CHFParams& p, cplx zeta, const EvalPolicy& pol = {}) {
  if (zeta == 0.0) throw DomainError("eval_U: z = 0");
  if (!(std::isfinite(zeta.real()) && std::isfinite(zeta.imag()))) {
    throw DomainError("eval_U: non-finite argument");
  }
  const cplx z = detail::canonical(zeta, pol, "eval_U");
  return detail::eval_U_impl(p.a, p.b, z, pol);
}

inline cplx eval_Mtilde(const CHFParams& p, cplx zeta, const EvalPolicy& pol = {}) {
  if (is_nonpositive_integer(2.0 - p.b)) {
    throw InvalidB("Mtilde(a,b,z) undefined for 2-b a non-positive integer");
  }
  if (zeta == 0.0) throw DomainError("eval_Mtilde: z = 0 (fractional power limit)");
  const cplx z = detail::canonical(zeta, pol, "eval_Mtilde");
  return detail::principal_pow(z, 1.0 - p.b) *
         eval_M({1.0 + p.a - p.b, 2.0 - p.b}, z, pol);
}

// value together with the largest intermediate magnitude of its evaluation
// ("max term"); identity residuals are scored against this scale, which is
// the honest backward-error yardstick when the defining sums cancel
struct TracedValue {
  cplx value;
  double scale;
};

inline TracedValue eval_M_traced(const CHFParams& p, cplx zeta,
                                 const EvalPolicy& pol = {}) {
  if (is_nonpositive_integer(p.b)) {
    throw InvalidB("M(a,b,z) undefined for b a non-positive integer");
  }
  if (zeta == 0.0) return {1.0, 1.0};
  if (std::abs(zeta) > pol.asymptotic_crossover) {
    if (auto v = detail::eval_M_asymptotic(p.a, p.b, zeta, pol, 1e-12)) {
      return {*v, std::abs(*v)};
    }
  }
  double peak = 1.0;
  const cplx v = detail::eval_M_series(p.a, p.b, zeta, pol, &peak);
  return {v, peak};
}

inline TracedValue eval_U_traced(const CHFParams& p, cplx zeta,
                                 const EvalPolicy& pol = {}) {
  if (zeta == 0.0) throw DomainError("eval_U: z = 0");
  const cplx z = detail::canonical(zeta, pol, "eval_U");
  double peak = 1.0;
  const cplx v = detail::eval_U_impl(p.a, p.b, z, pol, &peak);
  return {v, std::max(peak, std::abs(v))};
}

// ---------------------------------------------------------------------------
// contiguous-relation coefficients (DLMF 13.3.20/13.3.27 for the derivative,
// 13.3.18/13.3.25 with b -> b+1 for the second relation).  The Mtilde rows
// are stated for the normalized second solution M(1+a-b, 2-b, z), i.e. for
// z^{b-1} Mt(a,b,z), and its contiguous partner raises the underlying
// second parameter: "(a,b+1)" means M(1+a-b, 3-b, z).

inline cplx beta_coefficient(CHFKind kind, const CHFParams& p) {
  switch (kind) {
    case CHFKind::M:
      if (p.b == 0.0) throw BetaUndefined("beta undefined at b = 0 for M");
      return (p.b - p.a) / p.b;
    case CHFKind::U:
      return 1.0;
    case CHFKind::Mtilde:
      if (p.b == 2.0) throw BetaUndefined("beta undefined at b = 2 for Mtilde");
      return (1.0 - p.a) / (2.0 - p.b);
  }
  throw Error("unreachable");
}

inline cplx gamma_coefficient(CHFKind kind, const CHFParams& p) {
  return kind == CHFKind::Mtilde ? 2.0 - p.b : p.b;
}

inline cplx delta_coefficient(CHFKind kind, const CHFParams& p) {
  switch (kind) {
    case CHFKind::M: return p.b;
    case CHFKind::U: return p.b - p.a;
    case CHFKind::Mtilde: return 2.0 - p.b;
  }
  throw Error("unreachable");
}

// the function the contiguous relations act on: M, U, or the normalized
// second solution M(1+a-b, 2-b, z)
inline cplx eval_F(CHFKind kind, const CHFParams& p, cplx zeta,
                   const EvalPolicy& pol = {}) {
  switch (kind) {
    case CHFKind::M: return eval_M(p, zeta, pol);
    case CHFKind::U: return eval_U(p, zeta, pol);
    case CHFKind::Mtilde: return eval_M({1.0 + p.a - p.b, 2.0 - p.b}, zeta, pol);
  }
  throw Error("unreachable");
}

// contiguous partner "F(a, b+1, z)"
inline cplx eval_F_bp1(CHFKind kind, const CHFParams& p, cplx zeta,
                       const EvalPolicy& pol = {}) {
  switch (kind) {
    case CHFKind::M: return eval_M({p.a, p.b + 1.0}, zeta, pol);
    case CHFKind::U: return eval_U({p.a, p.b + 1.0}, zeta, pol);
    case CHFKind::Mtilde: return eval_M({1.0 + p.a - p.b, 3.0 - p.b}, zeta, pol);
  }
  throw Error("unreachable");
}

// dF/dz via F'(a,b,z) = F(a,b,z) - beta F(a,b+1,z)
inline cplx eval_dF(CHFKind kind, const CHFParams& p, cplx zeta,
                    const EvalPolicy& pol = {}) {
  const cplx beta = beta_coefficient(kind, p);
  return eval_F(kind, p, zeta, pol) - beta * eval_F_bp1(kind, p, zeta, pol);
}

}  // namespace chfact
