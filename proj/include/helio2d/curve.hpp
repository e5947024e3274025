#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "helio2d/fft_util.hpp"

namespace helio2d {

class SelfIntersectingCurve : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple closed curve gamma: [0,2pi) -> R^2 stored as centered Fourier
// coefficients (m = -n/2 .. n/2-1, n even, conjugate-symmetric) of each
// coordinate. Orientation is normalized to counterclockwise on construction.
class ClosedCurve {
 public:
  ClosedCurve() = default;

  static ClosedCurve from_coeffs(CVec cx, CVec cy, double length = -1.0);
  static ClosedCurve from_samples(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y);
  static ClosedCurve circle(double radius,
                            const Eigen::Vector2d& center = {0.0, 0.0},
                            int n_modes = 8);
  // (base + amp cos(lobes t)) (cos t, sin t)
  static ClosedCurve star(double base, double amp, int lobes, int n_modes = 64);

  int n_modes() const { return static_cast<int>(cx_.size()); }
  int bandwidth() const { return n_modes() / 2; }
  const CVec& coeffs_x() const { return cx_; }
  const CVec& coeffs_y() const { return cy_; }
  double nominal_length() const { return length_; }

  Eigen::Vector2d point(double t) const;
  Eigen::Vector2d derivative(double t) const;

  // gamma and gamma' at t_j = 2pi (j + shift)/N, j = 0..N-1. Requires
  // N >= n_modes().
  void eval_grid(int N, double shift, Eigen::ArrayX2d* pos,
                 Eigen::ArrayX2d* deriv) const;

  // gamma(t_j + 2pi shift/N) - gamma(t_j), evaluated spectrally so the
  // difference keeps full relative accuracy for small shifts.
  Eigen::ArrayX2d eval_grid_difference(int N, double shift) const;

  double perimeter(int oversample = 0) const;
  double signed_area(int oversample = 0) const;

 private:
  CVec cx_, cy_;
  double length_ = 0.0;
};

// Nystrom node set on a curve: positions, outward unit normals, speeds
// |gamma'|, at t_j = 2pi j / n.
struct DiscretizedBoundary {
  ClosedCurve curve;
  int n = 0;
  double h = 0.0;  // parameter spacing 2pi/n
  Eigen::ArrayX2d nodes;
  Eigen::ArrayX2d normals;
  Eigen::ArrayXd speeds;
};

DiscretizedBoundary sample(const ClosedCurve& curve, int N);

// Beylkin-Rokhlin style smoothing: raised-cosine window passing |m| <= b,
// rolling off to zero at |m| >= b+Nb, iterated with resampling to N points
// equispaced in arclength. Throws SelfIntersectingCurve if the result is not
// simple.
ClosedCurve filter_resample(const ClosedCurve& curve, int b, int Nb, int N);

// Naive O(Ns^2) polygonal self-intersection test; degenerate touching counts
// as intersecting.
bool is_simple(const ClosedCurve& curve, int Ns);

// Real trigonometric basis {1, cos t, sin t, ..., [cos((b/2)t)]} of
// dimension b, evaluated at t_j = 2pi j/N.
Eigen::MatrixXd trig_basis_matrix(int b, int N);
Eigen::VectorXd trig_basis_eval(int b, const Eigen::VectorXd& coeffs,
                                const Eigen::ArrayXd& t);

// New curve with nodes gamma(t_j) + scale p(t_j) nu(t_j), p given in the real
// trigonometric basis.
ClosedCurve perturb(const ClosedCurve& curve, const Eigen::VectorXd& p_coeffs,
                    double scale);

// Symmetric Hausdorff distance between polygonal samplings at Ns points.
double hausdorff(const ClosedCurve& a, const ClosedCurve& b, int Ns);

}  // namespace helio2d
