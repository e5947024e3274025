#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace helio2d {

// Uniform periodic trapezoid weights 2pi/N.
Eigen::VectorXd trapezoid_weights(int N);

// Hybrid Gauss-trapezoidal endpoint correction for periodic integrands with a
// log singularity at the target node: the trapezoid sum skips n_skipped grid
// points on each side of the singularity and adds auxiliary nodes at
// t_i +- chi_m h with weights w_m. Density values at auxiliary nodes come from
// Lagrange interpolation of degree order-1 on nearby grid samples.
struct AlpertRule {
  int order;       // 4, 8 or 16
  int n_skipped;   // a
  int interp_points;  // = order
  Eigen::VectorXd nodes;    // chi_m > 0, grid units, one side
  Eigen::VectorXd weights;  // w_m

  static const AlpertRule& get(int order);
};

struct AlpertAux {
  double offset;  // signed aux position in grid units
  double weight;
  int first;                // signed grid offset of first stencil column
  Eigen::VectorXd stencil;  // Lagrange weights over interp_points columns
};

// Per-(rule, N) stencil layout, independent of the target node index.
struct AlpertLayout {
  int order = 0;
  int a = 0;
  int n = 0;
  double h = 0.0;
  std::vector<AlpertAux> aux;  // both sides

  static AlpertLayout build(const AlpertRule& rule, int N);
};

// Quadrature row for f(t) = kernel(t) * density(t) at target node i: returns
// weights over the N density grid samples. kernel_at(t) evaluates the
// non-density factor anywhere; it is never called at t_i itself.
Eigen::VectorXcd alpert_row(
    const AlpertRule& rule, int N, int i,
    const std::function<std::complex<double>(double)>& kernel_at);

}  // namespace helio2d
