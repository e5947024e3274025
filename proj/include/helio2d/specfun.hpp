#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace helio2d::specfun {

using Complex = std::complex<double>;

struct Bessel01 {
  double j0, j1, y0, y1;
};

struct Hankel01 {
  Complex h0, h1;  // first kind, orders 0 and 1
};

// J0, J1, Y0, Y1 to <= 1e-13 relative error for x in (0, 1e4].
// Throws std::domain_error for x <= 0.
Bessel01 bessel_j0j1y0y1(double x);

// H0 = J0 + iY0, H1 = J1 + iY1, same accuracy as bessel_j0j1y0y1.
Hankel01 hankel01(double x);

// Table-driven evaluation used in kernel assembly. Relative accuracy of the
// complex values ~1e-15 (|H0|, |H1| never vanish on (0, inf)).
Hankel01 hankel01_fast(double x);

// Outgoing Helmholtz Green's function (i/4) H0(k|x-y|). Throws on x == y.
Complex green(double k, const Eigen::Vector2d& x, const Eigen::Vector2d& y);

// Gradient of green with respect to y: -(ik/4) H1(k r) (y-x)/r.
std::array<Complex, 2> green_grad(double k, const Eigen::Vector2d& x,
                                  const Eigen::Vector2d& y);

}  // namespace helio2d::specfun
