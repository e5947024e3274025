#include "helio2d/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helio2d/dd.hpp"

namespace helio2d::specfun {

namespace {

constexpr DD kPi{3.141592653589793, 1.2246467991473532e-16};
constexpr DD kTwoPi{6.283185307179586, 2.4492935982947064e-16};
constexpr DD kPiOver4{0.7853981633974483, 3.061616997868383e-17};
constexpr DD kThreePiOver4{2.356194490192345, 9.184850993605148e-17};
constexpr DD kEulerGamma{0.5772156649015329, -4.942915152430645e-18};
constexpr DD kTwoOverPi{0.6366197723675814, -3.935735335036497e-17};

constexpr double kSeriesAsymptoticSplit = 18.0;

struct Bessel01DD {
  DD j0, j1, y0, y1;
};

// Ascending series, summed in double-double. Usable for x <= ~40; the
// cancellation amplification e^x/(pi x) stays far below the dd headroom.
Bessel01DD bessel_series_dd(double x) {
  DD q = dd_mul(DD(0.5 * x), 0.5 * x);  // (x/2)^2

  DD j0_sum = DD(1.0);
  DD j0_term = DD(1.0);
  DD y0_sum = DD(0.0);  // sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2
  DD harmonic = DD(0.0);

  DD j1_sum = DD(1.0);  // sum q^m / (m! (m+1)!), alternating applied in-loop
  DD j1_term = DD(1.0);
  DD y1_sum = dd_mul(dd_neg(kEulerGamma), 2.0);  // m=0: H_0 + H_1 - 2g with H_1 added below
  y1_sum = dd_add(y1_sum, DD(1.0));

  for (int m = 1; m <= 90; ++m) {
    double md = static_cast<double>(m);
    j0_term = dd_neg(dd_div(dd_mul(j0_term, q), md * md));
    j0_sum = dd_add(j0_sum, j0_term);
    harmonic = dd_add(harmonic, dd_div(DD(1.0), DD(md)));
    // (-1)^{m+1} H_m q^m/(m!)^2 = -(j0_term)*H_m since j0_term carries (-1)^m
    y0_sum = dd_sub(y0_sum, dd_mul(j0_term, harmonic));

    j1_term = dd_neg(dd_div(dd_mul(j1_term, q), md * (md + 1.0)));
    j1_sum = dd_add(j1_sum, j1_term);
    DD coef = dd_add(dd_mul(harmonic, 2.0), dd_div(DD(1.0), DD(md + 1.0)));
    coef = dd_sub(coef, dd_mul(kEulerGamma, 2.0));
    y1_sum = dd_add(y1_sum, dd_mul(j1_term, coef));

    if (std::abs(j0_term.hi) < 1e-36 && std::abs(j1_term.hi) < 1e-36 && m > 4)
      break;
  }

  DD half_x = DD(0.5 * x);
  DD log_half_x = dd_log(half_x);

  Bessel01DD out;
  out.j0 = j0_sum;
  out.j1 = dd_mul(j1_sum, half_x);
  out.y0 = dd_mul(kTwoOverPi,
                  dd_add(dd_mul(dd_add(log_half_x, kEulerGamma), out.j0), y0_sum));
  // Y1 = (2/pi) ln(x/2) J1 - 2/(pi x) - (x/(2 pi)) * sum
  DD t1 = dd_mul(dd_mul(kTwoOverPi, log_half_x), out.j1);
  DD t2 = dd_div(kTwoOverPi, DD(x));
  DD t3 = dd_mul(dd_div(dd_mul(kTwoOverPi, half_x), 2.0), y1_sum);
  out.y1 = dd_sub(dd_sub(t1, t2), t3);
  return out;
}

struct PhaseSinCos {
  DD s, c;
};

// sin/cos of (x - phase0) reduced mod 2pi in dd.
PhaseSinCos phase_sincos(double x, DD phase0) {
  DD r = dd_sub(DD(x), phase0);
  double n = std::nearbyint(r.value() / kTwoPi.value());
  r = dd_sub(r, dd_mul(kTwoPi, n));
  double sh = std::sin(r.hi);
  double ch = std::cos(r.hi);
  PhaseSinCos out;
  out.s = dd_add(DD(sh), DD(r.lo * ch));
  out.c = dd_sub(DD(ch), DD(r.lo * sh));
  return out;
}

// Hankel asymptotic modulus/phase sums: P + iQ = sum_j i^j a_j(nu) x^{-j},
// truncated at the smallest term.
void asymptotic_pq(double x, double nu, DD& p, DD& q) {
  double mu = 4.0 * nu * nu;
  p = DD(1.0);
  q = DD(0.0);
  DD term = DD(1.0);
  double prev = 1e300;
  for (int m = 0; m < 80; ++m) {
    double num = mu - (2.0 * m + 1.0) * (2.0 * m + 1.0);
    term = dd_div(dd_mul(term, num / (8.0 * (m + 1.0))), DD(x));
    double mag = std::abs(term.hi);
    if (mag >= prev) break;  // divergence onset
    prev = mag;
    int j = m + 1;  // term now holds a_j / x^j
    if (j % 2 == 1) {
      double sign = ((j - 1) / 2 % 2 == 0) ? 1.0 : -1.0;
      q = dd_add(q, dd_mul(term, sign));
    } else {
      double sign = (j / 2 % 2 == 0) ? 1.0 : -1.0;
      p = dd_add(p, dd_mul(term, sign));
    }
    if (mag < 1e-34) break;
  }
}

Bessel01DD bessel_asymptotic_dd(double x) {
  DD amp = dd_sqrt(dd_div(kTwoOverPi, DD(x)));
  DD p0, q0, p1, q1;
  asymptotic_pq(x, 0.0, p0, q0);
  asymptotic_pq(x, 1.0, p1, q1);
  PhaseSinCos ph0 = phase_sincos(x, kPiOver4);
  PhaseSinCos ph1 = phase_sincos(x, kThreePiOver4);
  Bessel01DD out;
  out.j0 = dd_mul(amp, dd_sub(dd_mul(p0, ph0.c), dd_mul(q0, ph0.s)));
  out.y0 = dd_mul(amp, dd_add(dd_mul(p0, ph0.s), dd_mul(q0, ph0.c)));
  out.j1 = dd_mul(amp, dd_sub(dd_mul(p1, ph1.c), dd_mul(q1, ph1.s)));
  out.y1 = dd_mul(amp, dd_add(dd_mul(p1, ph1.s), dd_mul(q1, ph1.c)));
  return out;
}

Bessel01DD bessel_dd(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j0j1y0y1: requires x > 0");
  return x <= kSeriesAsymptoticSplit ? bessel_series_dd(x)
                                     : bessel_asymptotic_dd(x);
}

// ---------------------------------------------------------------------------
// Fast path: piecewise Chebyshev fits of J0, J1 and the log-regularized parts
// of Y0, Y1 on (0, 18], built once from the dd evaluator; Hankel asymptotics
// in plain double beyond.

constexpr int kChebIntervals = 12;
constexpr int kChebDegree = 26;
constexpr double kChebXmax = kSeriesAsymptoticSplit;

struct ChebTable {
  // coeffs[interval][func][j], func: 0=J0 1=J1 2=Y0reg 3=Y1reg
  std::array<std::array<std::array<double, kChebDegree + 1>, 4>, kChebIntervals>
      coeffs{};
  double dx = kChebXmax / kChebIntervals;
};

ChebTable build_cheb_table() {
  ChebTable t;
  const int n = kChebDegree + 1;
  for (int iv = 0; iv < kChebIntervals; ++iv) {
    double xa = iv * t.dx, xb = (iv + 1) * t.dx;
    std::array<std::vector<double>, 4> samples;
    for (auto& s : samples) s.resize(n);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
      double theta = M_PI * (i + 0.5) / n;
      double u = std::cos(theta);
      double x = 0.5 * (xa + xb) + 0.5 * (xb - xa) * u;
      xs[i] = x;
      Bessel01DD b = bessel_series_dd(x);
      DD log_half_x = dd_log(DD(0.5 * x));
      DD lf = dd_mul(kTwoOverPi, log_half_x);
      DD y0reg = dd_sub(b.y0, dd_mul(lf, b.j0));
      DD y1reg = dd_add(dd_sub(b.y1, dd_mul(lf, b.j1)),
                        dd_div(kTwoOverPi, DD(x)));
      samples[0][i] = b.j0.value();
      samples[1][i] = b.j1.value();
      samples[2][i] = y0reg.value();
      samples[3][i] = y1reg.value();
    }
    for (int f = 0; f < 4; ++f) {
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc += samples[f][i] * std::cos(M_PI * j * (i + 0.5) / n);
        t.coeffs[iv][f][j] = 2.0 / n * acc;
      }
      t.coeffs[iv][f][0] *= 0.5;
    }
  }
  return t;
}

const ChebTable& cheb_table() {
  static const ChebTable table = build_cheb_table();
  return table;
}

inline double clenshaw(const std::array<double, kChebDegree + 1>& c, double u) {
  double b1 = 0.0, b2 = 0.0;
  for (int j = kChebDegree; j >= 1; --j) {
    double b0 = 2.0 * u * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

Hankel01 hankel_fast_small(double x) {
  const ChebTable& t = cheb_table();
  int iv = static_cast<int>(x / t.dx);
  if (iv >= kChebIntervals) iv = kChebIntervals - 1;
  double xa = iv * t.dx, xb = (iv + 1) * t.dx;
  double u = (2.0 * x - (xa + xb)) / (xb - xa);
  double j0 = clenshaw(t.coeffs[iv][0], u);
  double j1 = clenshaw(t.coeffs[iv][1], u);
  double y0reg = clenshaw(t.coeffs[iv][2], u);
  double y1reg = clenshaw(t.coeffs[iv][3], u);
  double lf = (2.0 / M_PI) * std::log(0.5 * x);
  double y0 = y0reg + lf * j0;
  double y1 = y1reg + lf * j1 - 2.0 / (M_PI * x);
  return {Complex(j0, y0), Complex(j1, y1)};
}

Hankel01 hankel_fast_large(double x) {
  // H_nu = sqrt(2/(pi x)) (P + iQ) e^{i(x - (2nu+1)pi/4)},
  // P + iQ = sum_j i^j a_j(nu) x^{-j}
  double amp = std::sqrt(2.0 / (M_PI * x));
  Complex pq[2];
  for (int nu = 0; nu <= 1; ++nu) {
    double mu = 4.0 * nu * nu;
    Complex sum(1.0, 0.0);
    Complex cterm(1.0, 0.0);
    double prev = 1e300;
    for (int m = 0; m < 40; ++m) {
      double f = (mu - (2.0 * m + 1.0) * (2.0 * m + 1.0)) / (8.0 * (m + 1.0) * x);
      cterm *= Complex(0.0, f);
      double mag = std::abs(cterm);
      if (mag >= prev) break;
      prev = mag;
      sum += cterm;
      if (mag < 1e-18) break;
    }
    pq[nu] = sum;
  }
  PhaseSinCos ph0 = phase_sincos(x, kPiOver4);
  PhaseSinCos ph1 = phase_sincos(x, kThreePiOver4);
  Complex h0 = amp * pq[0] * Complex(ph0.c.value(), ph0.s.value());
  Complex h1 = amp * pq[1] * Complex(ph1.c.value(), ph1.s.value());
  return {h0, h1};
}

}  // namespace

Bessel01 bessel_j0j1y0y1(double x) {
  Bessel01DD b = bessel_dd(x);
  return {b.j0.value(), b.j1.value(), b.y0.value(), b.y1.value()};
}

Hankel01 hankel01(double x) {
  Bessel01DD b = bessel_dd(x);
  return {Complex(b.j0.value(), b.y0.value()),
          Complex(b.j1.value(), b.y1.value())};
}

Hankel01 hankel01_fast(double x) {
  if (!(x > 0.0)) throw std::domain_error("hankel01_fast: requires x > 0");
  return x <= kChebXmax ? hankel_fast_small(x) : hankel_fast_large(x);
}

Complex green(double k, const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  if (!(k > 0.0)) throw std::domain_error("green: requires k > 0");
  double r = (x - y).norm();
  if (r == 0.0) throw std::domain_error("green: singular at x == y");
  Hankel01 h = hankel01(k * r);
  return Complex(0.0, 0.25) * h.h0;
}

std::array<Complex, 2> green_grad(double k, const Eigen::Vector2d& x,
                                  const Eigen::Vector2d& y) {
  if (!(k > 0.0)) throw std::domain_error("green_grad: requires k > 0");
  Eigen::Vector2d diff = y - x;
  double r = diff.norm();
  if (r == 0.0) throw std::domain_error("green_grad: singular at x == y");
  Hankel01 h = hankel01(k * r);
  Complex factor = Complex(0.0, -0.25 * k) * h.h1 / r;
  return {factor * diff.x(), factor * diff.y()};
}

}  // namespace helio2d::specfun
