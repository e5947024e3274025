#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo carrying ~31 decimal
// digits. Used where plain double loses too many digits to cancellation
// (Bessel series at moderate argument, quadrature table generation).

#include <cmath>
#include <cstdlib>

namespace helio2d {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DD dd_add(DD a, DD b) {
  using namespace dd_detail;
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }
inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  using namespace dd_detail;
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
  using namespace dd_detail;
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  q.lo += q3;
  return quick_two_sum(q.hi, q.lo);
}

inline DD dd_div(DD a, double b) { return dd_div(a, DD(b)); }

inline DD dd_sqrt(DD a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  double s0 = std::sqrt(a.hi);
  // one Newton step in dd: s = (s0 + a/s0) / 2
  DD s = dd_mul(dd_add(DD(s0), dd_div(a, DD(s0))), 0.5);
  return s;
}

inline bool dd_less_abs(DD a, double b) { return std::abs(a.hi) < b; }

// exp for |a| not huge: range reduce by ln 2, Taylor series in dd.
inline DD dd_exp(DD a) {
  static const DD kLn2{6.93147180559945286e-01, 2.31904681384629956e-17};
  if (a.hi > 709.0) return {HUGE_VAL, 0.0};
  if (a.hi < -709.0) return {0.0, 0.0};
  double m = std::nearbyint(a.value() / kLn2.value());
  DD r = dd_sub(a, dd_mul(kLn2, m));
  // |r| <= ln2/2; Taylor
  DD sum = DD(1.0);
  DD term = DD(1.0);
  for (int i = 1; i < 32; ++i) {
    term = dd_div(dd_mul(term, r), static_cast<double>(i));
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  return dd_mul(sum, std::ldexp(1.0, static_cast<int>(m)));
}

// natural log via Newton iteration on dd_exp
inline DD dd_log(DD a) {
  double y0 = std::log(a.value());
  DD y = DD(y0);
  for (int it = 0; it < 2; ++it) {
    DD e = dd_exp(dd_neg(y));
    DD corr = dd_sub(dd_mul(a, e), DD(1.0));
    y = dd_add(y, corr);
  }
  return y;
}

}  // namespace helio2d
