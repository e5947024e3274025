#pragma once

#include <string>
#include <utility>
#include <vector>

#include "helio2d/forward.hpp"

namespace helio2d {

// Real trigonometric perturbation space with frequencies up to the bandlimit
// b: {1, cos t, sin t, ..., cos(b t), sin(b t)}, dimension 2b+1. The update
// band matches the curve filter's passband, which is what lets the sweep
// build up geometric detail frequency by frequency.
struct PerturbationBasis {
  int b;  // highest perturbation frequency; b = 0 is the constant-only space
  explicit PerturbationBasis(int b_) : b(b_) {
    if (b < 0) throw std::invalid_argument("PerturbationBasis: b >= 0");
  }
  int dimension() const { return 2 * b + 1; }
  Eigen::MatrixXd eval_matrix(int N) const {
    return trig_basis_matrix(dimension(), N);
  }
};

struct NewtonControls {
  double rho = 0.1;        // damping
  double lambda = 0.5;     // backtracking base
  int max_backtracks = 20;
  int max_iters = 30;
  double residual_tol = 1e-4;
  double min_step_tol = 1e-3;  // on max_t |p(t)|
  int Nb = 50;                 // filter roll-off width
};

struct LinearizedSystem {
  Eigen::MatrixXd design;  // (2 M L) x b stacked real/imag rows
  Eigen::VectorXd rhs;
  int M = 0, L = 0, b = 0;
  double cond() const;
};

struct StepReport {
  int iter = 0;
  double residual_before = 0.0;
  double step_norm = 0.0;  // max_t |p(t)| of the undamped step
  int backtracks = 0;
  double residual_after = 0.0;
};

struct NewtonHistory {
  std::vector<StepReport> steps;
  std::vector<ClosedCurve> iterates;  // accepted curves, one per step
  std::string stop_reason;
  bool converged = false;
  double final_residual = 0.0;
};

// sqrt(2pi/M) * l2 norm over all directions and angles
double residual_norm(const std::vector<Eigen::VectorXcd>& per_direction, int M);

// Frechet derivative action: far field of the radiating field v with
// Dirichlet trace v = -p dudn on the boundary (Kirsch).
FarFieldData frechet_apply(ForwardSolver& solver, const DensitySolution& dudn,
                           const Eigen::VectorXd& p_coeffs,
                           const Eigen::VectorXd& angles);

// Stacked real least-squares system for the update coefficients. The
// transpose-trick path solves C^{-T} once against the M columns of A_inf^T;
// build_system_direct materializes F' column-by-column instead.
LinearizedSystem build_system(ForwardSolver& solver,
                              const std::vector<DensitySolution>& dudn,
                              const std::vector<FarFieldData>& measured,
                              const PerturbationBasis& basis);
LinearizedSystem build_system_direct(ForwardSolver& solver,
                                     const std::vector<DensitySolution>& dudn,
                                     const std::vector<FarFieldData>& measured,
                                     const PerturbationBasis& basis);

Eigen::VectorXd solve_least_squares(const LinearizedSystem& sys);

struct NewtonStepResult {
  ClosedCurve curve;
  StepReport report;
  bool failed = false;
  std::string what;
};

// One damped Gauss-Newton step: solve the linearized problem, damp by
// rho lambda^l until the perturbed and filtered curve is simple, filter to
// the band limit, report.
NewtonStepResult newton_step(const ClosedCurve& curve,
                             const std::vector<IncidentWave>& waves,
                             const std::vector<FarFieldData>& measured,
                             const NewtonControls& controls,
                             const PerturbationBasis& basis, int n1,
                             int filter_b, const ForwardOptions& fw = {});

std::pair<ClosedCurve, NewtonHistory> run_newton(
    const ClosedCurve& start, const std::vector<IncidentWave>& waves,
    const std::vector<FarFieldData>& measured, const NewtonControls& controls,
    const PerturbationBasis& basis, int n1, int filter_b,
    const ForwardOptions& fw = {});

}  // namespace helio2d
