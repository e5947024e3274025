#include "helio2d/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace helio2d {

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// exact conjugate symmetrization of centered coefficients (n even):
// slot i holds frequency m = i - n/2.
void symmetrize(CVec& c) {
  int n = static_cast<int>(c.size());
  int half = n / 2;
  c[half] = Complex(c[half].real(), 0.0);  // m = 0
  c[0] = Complex(c[0].real(), 0.0);        // m = -n/2 (unpaired Nyquist)
  for (int m = 1; m < half; ++m) {
    Complex a = c[half + m];
    Complex b = c[half - m];
    Complex avg = 0.5 * (a + std::conj(b));
    c[half + m] = avg;
    c[half - m] = std::conj(avg);
  }
}

CVec centered_from_fft(const CVec& bins) {
  int n = static_cast<int>(bins.size());
  CVec out(n);
  int half = n / 2;
  for (int i = 0; i < n; ++i) {
    int m = fft_freq(i, n);
    out[m + half] = bins[i];
  }
  return out;
}

// spread centered coefficients into length-N fft bins with optional
// phase shift e^{i m theta} and optional spectral derivative factor (i m).
CVec to_bins(const CVec& centered, int N, double theta, bool derivative) {
  int n = static_cast<int>(centered.size());
  int half = n / 2;
  CVec bins = CVec::Zero(N);
  for (int i = 0; i < n; ++i) {
    int m = i - half;
    Complex v = centered[i];
    if (derivative) {
      if (m == -half) continue;  // Nyquist derivative convention
      v *= Complex(0.0, static_cast<double>(m));
    }
    if (theta != 0.0) v *= std::polar(1.0, m * theta);
    bins[fft_bin(m, N)] += v;
  }
  return bins;
}

// coefficients of gamma(t + theta) - gamma(t): c_m (e^{im theta} - 1),
// with the factor computed as 2i sin(m theta/2) e^{im theta/2}
CVec to_bins_difference(const CVec& centered, int N, double theta) {
  int n = static_cast<int>(centered.size());
  int half = n / 2;
  CVec bins = CVec::Zero(N);
  for (int i = 0; i < n; ++i) {
    int m = i - half;
    Complex factor = Complex(0.0, 2.0 * std::sin(0.5 * m * theta)) *
                     std::polar(1.0, 0.5 * m * theta);
    bins[fft_bin(m, N)] += centered[i] * factor;
  }
  return bins;
}

double max_abs(const CVec& c) {
  double m = 0.0;
  for (int i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i]));
  return m;
}

}  // namespace

ClosedCurve ClosedCurve::from_coeffs(CVec cx, CVec cy, double length) {
  if (cx.size() != cy.size() || cx.size() < 2 || cx.size() % 2 != 0)
    throw std::invalid_argument("ClosedCurve: need matching even-length coefficient arrays");
  double scale = std::max(max_abs(cx), max_abs(cy));
  int n = static_cast<int>(cx.size());
  int half = n / 2;
  for (int m = 1; m < half; ++m) {
    double dx = std::abs(cx[half + m] - std::conj(cx[half - m]));
    double dy = std::abs(cy[half + m] - std::conj(cy[half - m]));
    if (dx > 1e-10 * scale || dy > 1e-10 * scale)
      throw std::invalid_argument("ClosedCurve: coefficients not conjugate-symmetric");
  }
  symmetrize(cx);
  symmetrize(cy);
  ClosedCurve c;
  c.cx_ = std::move(cx);
  c.cy_ = std::move(cy);
  if (c.signed_area() < 0.0) {
    // reverse orientation: t -> -t swaps +m and -m (Nyquist stays)
    CVec rx = c.cx_, ry = c.cy_;
    for (int m = 1; m < half; ++m) {
      rx[half + m] = c.cx_[half - m];
      rx[half - m] = c.cx_[half + m];
      ry[half + m] = c.cy_[half - m];
      ry[half - m] = c.cy_[half + m];
    }
    c.cx_ = std::move(rx);
    c.cy_ = std::move(ry);
  }
  c.length_ = length > 0.0 ? length : c.perimeter();
  return c;
}

ClosedCurve ClosedCurve::from_samples(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y) {
  int N = static_cast<int>(x.size());
  if (N < 4 || x.size() != y.size())
    throw std::invalid_argument("ClosedCurve::from_samples: need >= 4 samples");
  CVec zx(N), zy(N);
  for (int j = 0; j < N; ++j) {
    zx[j] = Complex(x[j], 0.0);
    zy[j] = Complex(y[j], 0.0);
  }
  CVec bx = fft(zx) / static_cast<double>(N);
  CVec by = fft(zy) / static_cast<double>(N);
  CVec cx, cy;
  if (N % 2 == 0) {
    cx = centered_from_fft(bx);
    cy = centered_from_fft(by);
  } else {
    // embed odd spectrum into the next even length
    int n2 = N + 1;
    cx = CVec::Zero(n2);
    cy = CVec::Zero(n2);
    for (int i = 0; i < N; ++i) {
      int m = fft_freq(i, N);
      cx[m + n2 / 2] = bx[i];
      cy[m + n2 / 2] = by[i];
    }
  }
  return from_coeffs(std::move(cx), std::move(cy));
}

ClosedCurve ClosedCurve::circle(double radius, const Eigen::Vector2d& center,
                                int n_modes) {
  if (n_modes < 4) n_modes = 4;
  if (n_modes % 2 != 0) ++n_modes;
  CVec cx = CVec::Zero(n_modes), cy = CVec::Zero(n_modes);
  int half = n_modes / 2;
  cx[half] = Complex(center.x(), 0.0);
  cy[half] = Complex(center.y(), 0.0);
  cx[half + 1] = Complex(0.5 * radius, 0.0);
  cx[half - 1] = Complex(0.5 * radius, 0.0);
  cy[half + 1] = Complex(0.0, -0.5 * radius);
  cy[half - 1] = Complex(0.0, 0.5 * radius);
  return from_coeffs(std::move(cx), std::move(cy));
}

ClosedCurve ClosedCurve::star(double base, double amp, int lobes, int n_modes) {
  int need = 2 * (lobes + 2) + 2;
  int N = std::max(n_modes, need);
  if (N % 2 != 0) ++N;
  Eigen::VectorXd x(N), y(N);
  for (int j = 0; j < N; ++j) {
    double t = kTwoPi * j / N;
    double r = base + amp * std::cos(lobes * t);
    x[j] = r * std::cos(t);
    y[j] = r * std::sin(t);
  }
  return from_samples(x, y);
}

Eigen::Vector2d ClosedCurve::point(double t) const {
  int n = n_modes();
  int half = n / 2;
  Complex e = std::polar(1.0, t);
  Complex p(1.0, 0.0);
  double x = cx_[half].real();
  double y = cy_[half].real();
  for (int m = 1; m < half; ++m) {
    p = (m % 64 == 0) ? std::polar(1.0, m * t) : p * e;
    x += 2.0 * (cx_[half + m] * p).real();
    y += 2.0 * (cy_[half + m] * p).real();
  }
  double cn = std::cos(half * t);
  x += cx_[0].real() * cn;
  y += cy_[0].real() * cn;
  return {x, y};
}

Eigen::Vector2d ClosedCurve::derivative(double t) const {
  int n = n_modes();
  int half = n / 2;
  Complex e = std::polar(1.0, t);
  Complex p(1.0, 0.0);
  double x = 0.0, y = 0.0;
  for (int m = 1; m < half; ++m) {
    p = (m % 64 == 0) ? std::polar(1.0, m * t) : p * e;
    Complex im(0.0, static_cast<double>(m));
    x += 2.0 * (im * cx_[half + m] * p).real();
    y += 2.0 * (im * cy_[half + m] * p).real();
  }
  return {x, y};
}

void ClosedCurve::eval_grid(int N, double shift, Eigen::ArrayX2d* pos,
                            Eigen::ArrayX2d* deriv) const {
  if (N < n_modes())
    throw std::invalid_argument("ClosedCurve::eval_grid: N below curve bandwidth");
  double theta = kTwoPi * shift / N;
  auto run = [&](const CVec& c, bool der, Eigen::ArrayX2d* out, int col) {
    CVec vals = ifft(to_bins(c, N, theta, der)) * static_cast<double>(N);
    for (int j = 0; j < N; ++j) (*out)(j, col) = vals[j].real();
  };
  if (pos) {
    pos->resize(N, 2);
    run(cx_, false, pos, 0);
    run(cy_, false, pos, 1);
  }
  if (deriv) {
    deriv->resize(N, 2);
    run(cx_, true, deriv, 0);
    run(cy_, true, deriv, 1);
  }
}

Eigen::ArrayX2d ClosedCurve::eval_grid_difference(int N, double shift) const {
  if (N < n_modes())
    throw std::invalid_argument("eval_grid_difference: N below curve bandwidth");
  double theta = kTwoPi * shift / N;
  Eigen::ArrayX2d out(N, 2);
  CVec vx = ifft(to_bins_difference(cx_, N, theta)) * static_cast<double>(N);
  CVec vy = ifft(to_bins_difference(cy_, N, theta)) * static_cast<double>(N);
  for (int j = 0; j < N; ++j) {
    out(j, 0) = vx[j].real();
    out(j, 1) = vy[j].real();
  }
  return out;
}

double ClosedCurve::perimeter(int oversample) const {
  int N = oversample > 0 ? std::max(oversample, n_modes())
                         : std::max(4 * n_modes(), 256);
  Eigen::ArrayX2d d;
  eval_grid(N, 0.0, nullptr, &d);
  double sum = 0.0;
  for (int j = 0; j < N; ++j) sum += std::hypot(d(j, 0), d(j, 1));
  return sum * kTwoPi / N;
}

double ClosedCurve::signed_area(int oversample) const {
  int N = oversample > 0 ? std::max(oversample, n_modes())
                         : std::max(4 * n_modes(), 256);
  Eigen::ArrayX2d p, d;
  eval_grid(N, 0.0, &p, &d);
  double sum = 0.0;
  for (int j = 0; j < N; ++j) sum += p(j, 0) * d(j, 1) - p(j, 1) * d(j, 0);
  return 0.5 * sum * kTwoPi / N;
}

DiscretizedBoundary sample(const ClosedCurve& curve, int N) {
  if (N < curve.n_modes())
    throw std::invalid_argument("sample: N below curve bandwidth");
  DiscretizedBoundary b;
  b.curve = curve;
  b.n = N;
  b.h = kTwoPi / N;
  Eigen::ArrayX2d d;
  curve.eval_grid(N, 0.0, &b.nodes, &d);
  b.speeds.resize(N);
  b.normals.resize(N, 2);
  for (int j = 0; j < N; ++j) {
    double sp = std::hypot(d(j, 0), d(j, 1));
    if (!(sp > 0.0))
      throw std::invalid_argument("sample: vanishing tangent (irregular curve)");
    b.speeds[j] = sp;
    b.normals(j, 0) = d(j, 1) / sp;
    b.normals(j, 1) = -d(j, 0) / sp;
  }
  return b;
}

namespace {

// Fourier series of |gamma'| and its antiderivative s(t).
struct SpeedSeries {
  CVec g;  // centered coefficients
  int n = 0;
  double g0 = 0.0;
  double length() const { return kTwoPi * g0; }

  static SpeedSeries build(const ClosedCurve& c) {
    int Nf = std::max(4 * c.n_modes(), 512);
    Eigen::ArrayX2d d;
    c.eval_grid(Nf, 0.0, nullptr, &d);
    CVec sp(Nf);
    for (int j = 0; j < Nf; ++j)
      sp[j] = Complex(std::hypot(d(j, 0), d(j, 1)), 0.0);
    CVec bins = fft(sp) / static_cast<double>(Nf);
    SpeedSeries s;
    s.g = centered_from_fft(bins);
    symmetrize(s.g);
    s.n = Nf;
    s.g0 = s.g[Nf / 2].real();
    return s;
  }

  double speed(double t) const {
    int half = n / 2;
    Complex e = std::polar(1.0, t);
    Complex p(1.0, 0.0);
    double v = g0;
    for (int m = 1; m < half; ++m) {
      p = (m % 64 == 0) ? std::polar(1.0, m * t) : p * e;
      v += 2.0 * (g[half + m] * p).real();
    }
    v += g[0].real() * std::cos(half * t);
    return v;
  }

  double arclength(double t) const {
    int half = n / 2;
    Complex e = std::polar(1.0, t);
    Complex p(1.0, 0.0);
    double v = g0 * t;
    for (int m = 1; m < half; ++m) {
      p = (m % 64 == 0) ? std::polar(1.0, m * t) : p * e;
      // 2 Re(g_m (e^{imt}-1)/(im))
      Complex term = g[half + m] * (p - 1.0) / Complex(0.0, static_cast<double>(m));
      v += 2.0 * term.real();
    }
    v += g[0].real() * std::sin(half * t) / half;
    return v;
  }
};

// parameters of N points equispaced in arclength, anchored at t=0
Eigen::ArrayXd equi_arclength_params(const SpeedSeries& s, int N) {
  double L = s.length();
  Eigen::ArrayXd t(N);
  t[0] = 0.0;
  double prev = 0.0;
  for (int j = 1; j < N; ++j) {
    double target = L * j / N;
    double lo = prev, hi = kTwoPi;
    double tj = prev + (target - s.arclength(prev)) / std::max(s.speed(prev), 1e-12);
    tj = std::clamp(tj, lo, hi);
    for (int it = 0; it < 80; ++it) {
      double f = s.arclength(tj) - target;
      if (f > 0.0)
        hi = tj;
      else
        lo = tj;
      double dt = f / std::max(s.speed(tj), 1e-12);
      double next = tj - dt;
      if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
      if (std::abs(next - tj) < 1e-13) {
        tj = next;
        break;
      }
      tj = next;
    }
    t[j] = tj;
    prev = tj;
  }
  return t;
}

ClosedCurve resample_arclength(const ClosedCurve& c, int N) {
  SpeedSeries s = SpeedSeries::build(c);
  Eigen::ArrayXd t = equi_arclength_params(s, N);
  Eigen::VectorXd x(N), y(N);
  for (int j = 0; j < N; ++j) {
    Eigen::Vector2d p = c.point(t[j]);
    x[j] = p.x();
    y[j] = p.y();
  }
  return ClosedCurve::from_samples(x, y);
}

// Cubed raised cosine: w = 1 on [0,b], 0 beyond b+Nb, C^2 monotone roll-off.
// The cube keeps the content that reparametrization scatters past the window
// support below the band-limit tolerance of the accepted iterates.
CVec apply_window(const CVec& c, int b, int Nb) {
  int n = static_cast<int>(c.size());
  int half = n / 2;
  CVec out(n);
  for (int i = 0; i < n; ++i) {
    int m = std::abs(i - half);
    double w;
    if (m <= b)
      w = 1.0;
    else if (m >= b + Nb)
      w = 0.0;
    else
      w = 0.5 * (1.0 + std::cos(M_PI * (m - b) / static_cast<double>(Nb)));
    out[i] = c[i] * (w * w * w);
  }
  return out;
}

ClosedCurve truncate_above(const ClosedCurve& c, int cutoff) {
  CVec cx = c.coeffs_x(), cy = c.coeffs_y();
  int n = static_cast<int>(cx.size()), half = n / 2;
  for (int i = 0; i < n; ++i) {
    if (std::abs(i - half) > cutoff) {
      cx[i] = Complex(0.0, 0.0);
      cy[i] = Complex(0.0, 0.0);
    }
  }
  return ClosedCurve::from_coeffs(std::move(cx), std::move(cy));
}

double above_band_level(const ClosedCurve& c, int b, int Nb) {
  int n = c.n_modes();
  int half = n / 2;
  double top = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    int m = std::abs(i - half);
    double mag = std::max(std::abs(c.coeffs_x()[i]), std::abs(c.coeffs_y()[i]));
    scale = std::max(scale, mag);
    if (m > b + Nb) top = std::max(top, mag);
  }
  return scale > 0.0 ? top / scale : 0.0;
}

double speed_deviation(const ClosedCurve& c) {
  int N = std::max(4 * c.n_modes(), 512);
  Eigen::ArrayX2d d;
  c.eval_grid(N, 0.0, nullptr, &d);
  double mn = 1e300, mx = 0.0, mean = 0.0;
  for (int j = 0; j < N; ++j) {
    double sp = std::hypot(d(j, 0), d(j, 1));
    mn = std::min(mn, sp);
    mx = std::max(mx, sp);
    mean += sp;
  }
  mean /= N;
  return (mx - mn) / mean;
}

}  // namespace

ClosedCurve filter_resample(const ClosedCurve& curve, int b, int Nb, int N) {
  if (b < 1 || Nb < 1 || N < 8)
    throw std::invalid_argument("filter_resample: need b >= 1, Nb >= 1, N >= 8");
  if (N % 2 != 0) ++N;
  ClosedCurve cur = curve;
  double prev_level = 1e300;
  for (int outer = 0; outer < 4; ++outer) {
    cur = ClosedCurve::from_coeffs(apply_window(cur.coeffs_x(), b, Nb),
                                   apply_window(cur.coeffs_y(), b, Nb));
    for (int inner = 0; inner < 25; ++inner) {
      cur = resample_arclength(cur, N);
      if (speed_deviation(cur) <= 1e-11) break;
    }
    double level = above_band_level(cur, b, Nb);
    // stop once the tiny tail regenerated by the reparametrization stops
    // shrinking; the exact cut below removes it
    if (level <= 1e-13 || level > 0.5 * prev_level) break;
    prev_level = level;
  }
  cur = truncate_above(cur, b + Nb);
  int ns = std::max(4096, 8 * (N / 2));
  if (!is_simple(cur, ns))
    throw SelfIntersectingCurve("filter_resample: filtered curve self-intersects");
  return cur;
}

namespace {

inline double cross2(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

// conservative proper/degenerate intersection test for segments p and q
bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  constexpr double kEps = 1e-14;
  Eigen::Vector2d u = p2 - p1, v = q2 - q1;
  double lu = u.norm(), lv = v.norm();
  double tol = kEps * lu * lv;
  double d1 = cross2(v.x(), v.y(), (p1 - q1).x(), (p1 - q1).y());
  double d2 = cross2(v.x(), v.y(), (p2 - q1).x(), (p2 - q1).y());
  double d3 = cross2(u.x(), u.y(), (q1 - p1).x(), (q1 - p1).y());
  double d4 = cross2(u.x(), u.y(), (q2 - p1).x(), (q2 - p1).y());
  bool deg = std::abs(d1) <= tol || std::abs(d2) <= tol || std::abs(d3) <= tol ||
             std::abs(d4) <= tol;
  if (deg) {
    // collinear or touching: intersecting unless clearly separated
    auto on_box = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                      const Eigen::Vector2d& c) {
      return std::min(a.x(), b.x()) - tol <= c.x() &&
             c.x() <= std::max(a.x(), b.x()) + tol &&
             std::min(a.y(), b.y()) - tol <= c.y() &&
             c.y() <= std::max(a.y(), b.y()) + tol;
    };
    if (std::abs(d1) <= tol && on_box(q1, q2, p1)) return true;
    if (std::abs(d2) <= tol && on_box(q1, q2, p2)) return true;
    if (std::abs(d3) <= tol && on_box(p1, p2, q1)) return true;
    if (std::abs(d4) <= tol && on_box(p1, p2, q2)) return true;
    return false;
  }
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

bool is_simple(const ClosedCurve& curve, int Ns) {
  int N = std::max(Ns, curve.n_modes());
  Eigen::ArrayX2d p;
  curve.eval_grid(N, 0.0, &p, nullptr);
  // per-segment bounding boxes
  Eigen::ArrayXd xmin(N), xmax(N), ymin(N), ymax(N);
  for (int i = 0; i < N; ++i) {
    int j = (i + 1) % N;
    xmin[i] = std::min(p(i, 0), p(j, 0));
    xmax[i] = std::max(p(i, 0), p(j, 0));
    ymin[i] = std::min(p(i, 1), p(j, 1));
    ymax[i] = std::max(p(i, 1), p(j, 1));
  }
  // adjacent fold-back check
  for (int i = 0; i < N; ++i) {
    int j = (i + 1) % N;
    int k = (i + 2) % N;
    Eigen::Vector2d u(p(j, 0) - p(i, 0), p(j, 1) - p(i, 1));
    Eigen::Vector2d v(p(k, 0) - p(j, 0), p(k, 1) - p(j, 1));
    double cr = cross2(u.x(), u.y(), v.x(), v.y());
    if (std::abs(cr) <= 1e-14 * u.norm() * v.norm() && u.dot(v) < 0.0)
      return false;
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 2; j < N; ++j) {
      if (i == 0 && j == N - 1) continue;  // adjacent around the seam
      if (xmin[i] > xmax[j] || xmin[j] > xmax[i] || ymin[i] > ymax[j] ||
          ymin[j] > ymax[i])
        continue;
      Eigen::Vector2d a1(p(i, 0), p(i, 1));
      Eigen::Vector2d a2(p((i + 1) % N, 0), p((i + 1) % N, 1));
      Eigen::Vector2d b1(p(j, 0), p(j, 1));
      Eigen::Vector2d b2(p((j + 1) % N, 0), p((j + 1) % N, 1));
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

Eigen::MatrixXd trig_basis_matrix(int b, int N) {
  Eigen::MatrixXd o(N, b);
  for (int j = 0; j < N; ++j) {
    double t = kTwoPi * j / N;
    o(j, 0) = 1.0;
    int col = 1;
    for (int m = 1; 2 * m - 1 < b; ++m) {
      o(j, col++) = std::cos(m * t);
      if (col < b) o(j, col++) = std::sin(m * t);
    }
  }
  return o;
}

Eigen::VectorXd trig_basis_eval(int b, const Eigen::VectorXd& coeffs,
                                const Eigen::ArrayXd& t) {
  if (coeffs.size() != b)
    throw std::invalid_argument("trig_basis_eval: coefficient size mismatch");
  Eigen::VectorXd out(t.size());
  for (int j = 0; j < t.size(); ++j) {
    double v = coeffs[0];
    int col = 1;
    for (int m = 1; 2 * m - 1 < b; ++m) {
      v += coeffs[col++] * std::cos(m * t[j]);
      if (col < b) v += coeffs[col++] * std::sin(m * t[j]);
    }
    out[j] = v;
  }
  return out;
}

ClosedCurve perturb(const ClosedCurve& curve, const Eigen::VectorXd& p_coeffs,
                    double scale) {
  int b = static_cast<int>(p_coeffs.size());
  int N = curve.n_modes() + b + 4;
  if (N % 2 != 0) ++N;
  N = std::max(N, 2 * (curve.n_modes() + b));
  if (N % 2 != 0) ++N;
  Eigen::ArrayX2d pos, der;
  curve.eval_grid(N, 0.0, &pos, &der);
  Eigen::ArrayXd t(N);
  for (int j = 0; j < N; ++j) t[j] = kTwoPi * j / N;
  Eigen::VectorXd p = trig_basis_eval(b, p_coeffs, t);
  Eigen::VectorXd x(N), y(N);
  for (int j = 0; j < N; ++j) {
    double sp = std::hypot(der(j, 0), der(j, 1));
    double nx = der(j, 1) / sp, ny = -der(j, 0) / sp;
    x[j] = pos(j, 0) + scale * p[j] * nx;
    y[j] = pos(j, 1) + scale * p[j] * ny;
  }
  return ClosedCurve::from_samples(x, y);
}

namespace {

double point_segment_dist(const Eigen::Vector2d& c, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b) {
  Eigen::Vector2d ab = b - a;
  double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (c - a).norm();
  double s = std::clamp((c - a).dot(ab) / len2, 0.0, 1.0);
  return (c - (a + s * ab)).norm();
}

double directed_hausdorff(const Eigen::ArrayX2d& pa, const Eigen::ArrayX2d& pb) {
  int na = static_cast<int>(pa.rows()), nb = static_cast<int>(pb.rows());
  double worst = 0.0;
  for (int i = 0; i < na; ++i) {
    Eigen::Vector2d c(pa(i, 0), pa(i, 1));
    double best = 1e300;
    for (int j = 0; j < nb; ++j) {
      Eigen::Vector2d a(pb(j, 0), pb(j, 1));
      Eigen::Vector2d b(pb((j + 1) % nb, 0), pb((j + 1) % nb, 1));
      best = std::min(best, point_segment_dist(c, a, b));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const ClosedCurve& a, const ClosedCurve& b, int Ns) {
  int na = std::max(Ns, a.n_modes());
  int nb = std::max(Ns, b.n_modes());
  Eigen::ArrayX2d pa, pb;
  a.eval_grid(na, 0.0, &pa, nullptr);
  b.eval_grid(nb, 0.0, &pb, nullptr);
  return std::max(directed_hausdorff(pa, pb), directed_hausdorff(pb, pa));
}

}  // namespace helio2d
