#pragma once

// Double-double arithmetic (Dekker/Knuth error-free transformations, FMA
// product splitting).  Used internally wherever a hypergeometric series or a
// two-term connection formula cancels badly enough that plain doubles cannot
// hold the working tolerance.  Roughly 32 significant digits.
//
// Only the operations the series accumulators need are provided; this is not
// a general-purpose extended type.

#include <cmath>
#include <complex>

namespace chfact {

struct dd {
  double hi{0.0};
  double lo{0.0};

  dd() = default;
  constexpr dd(double h, double l) : hi(h), lo(l) {}
  constexpr dd(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit by design

  double value() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(dd x, dd y) {
  dd s = detail::two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd x) { return {-x.hi, -x.lo}; }
inline dd operator-(dd x, dd y) { return x + (-y); }

inline dd operator*(dd x, dd y) {
  dd p = detail::two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd x, dd y) {
  const double q1 = x.hi / y.hi;
  dd r = x - y * dd(q1);
  const double q2 = r.hi / y.hi;
  r = r - y * dd(q2);
  const double q3 = r.hi / y.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& x, dd y) { return x = x + y; }
inline dd& operator*=(dd& x, dd y) { return x = x * y; }

// complex double-double, same restricted scope
struct cdd {
  dd re{};
  dd im{};

  cdd() = default;
  cdd(dd r, dd i) : re(r), im(i) {}
  cdd(double r, double i = 0.0) : re(r), im(i) {}
  explicit cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline cdd operator+(const cdd& x, const cdd& y) { return {x.re + y.re, x.im + y.im}; }
inline cdd operator-(const cdd& x, const cdd& y) { return {x.re - y.re, x.im - y.im}; }

inline cdd operator*(const cdd& x, const cdd& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline cdd operator/(const cdd& x, const cdd& y) {
  const dd n = y.re * y.re + y.im * y.im;
  const cdd num{x.re * y.re + x.im * y.im, x.im * y.re - x.re * y.im};
  return {num.re / n, num.im / n};
}

inline cdd& operator+=(cdd& x, const cdd& y) { return x = x + y; }
inline cdd& operator*=(cdd& x, const cdd& y) { return x = x * y; }

// exact shift by a double (used for the (a+n) parameter walks)
inline cdd shifted(const cdd& x, double n) { return {x.re + dd(n), x.im}; }

// cheap magnitude estimate, double precision is plenty for termination tests
inline double abs_estimate(const cdd& x) { return std::hypot(x.re.hi, x.im.hi); }

}  // namespace chfact
