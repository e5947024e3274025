#include "helio2d/inverse.hpp"

#include <cmath>

namespace helio2d {

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct StageEval {
  std::shared_ptr<const DiscretizedBoundary> boundary;
  std::unique_ptr<ForwardSolver> solver;
  std::vector<DensitySolution> dudn;        // per direction
  std::vector<Eigen::VectorXcd> residuals;  // measured - F(curve)
  double residual = 0.0;
};

// quadrature size floor: the correction rule needs N > 4*order, and the curve
// must stay resolvable
int effective_n1(int n1, const ClosedCurve& curve, const ForwardOptions& fw) {
  return std::max({n1, 4 * fw.rule_order + 2, curve.n_modes()});
}

StageEval evaluate_curve(const ClosedCurve& curve,
                         const std::vector<IncidentWave>& waves,
                         const std::vector<FarFieldData>& measured, int n1,
                         const ForwardOptions& fw) {
  if (waves.size() != measured.size() || waves.empty())
    throw std::invalid_argument("need one measured record per incident wave");
  StageEval ev;
  int n = effective_n1(n1, curve, fw);
  ev.boundary = std::make_shared<DiscretizedBoundary>(sample(curve, n));
  ev.solver = std::make_unique<ForwardSolver>(ev.boundary, waves[0].k, fw);
  int m = static_cast<int>(measured[0].angles.size());
  for (size_t l = 0; l < waves.size(); ++l) {
    ev.dudn.push_back(ev.solver->solve_green(waves[l]));
    FarFieldData f = far_field(ev.dudn.back(), measured[l].angles);
    ev.residuals.push_back(measured[l].values - f.values);
  }
  ev.residual = residual_norm(ev.residuals, m);
  return ev;
}

LinearizedSystem stack_real(const std::vector<Eigen::MatrixXcd>& fprime,
                            const std::vector<Eigen::VectorXcd>& residuals,
                            int m, int b) {
  int nl = static_cast<int>(fprime.size());
  LinearizedSystem sys;
  sys.M = m;
  sys.L = nl;
  sys.b = b;
  if (2 * m * nl <= b)
    throw std::invalid_argument("linearized system is underdetermined");
  sys.design.resize(2 * m * nl, b);
  sys.rhs.resize(2 * m * nl);
  for (int l = 0; l < nl; ++l) {
    for (int i = 0; i < m; ++i) {
      int r = 2 * (l * m + i);
      sys.design.row(r) = fprime[l].row(i).real();
      sys.design.row(r + 1) = fprime[l].row(i).imag();
      sys.rhs[r] = residuals[l][i].real();
      sys.rhs[r + 1] = residuals[l][i].imag();
    }
  }
  return sys;
}

}  // namespace

double LinearizedSystem::cond() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& s = svd.singularValues();
  return s[s.size() - 1] > 0 ? s[0] / s[s.size() - 1] : 1e300;
}

double residual_norm(const std::vector<Eigen::VectorXcd>& per_direction, int m) {
  double acc = 0.0;
  for (const auto& r : per_direction) acc += r.squaredNorm();
  return std::sqrt(kTwoPi / m * acc);
}

FarFieldData frechet_apply(ForwardSolver& solver, const DensitySolution& dudn,
                           const Eigen::VectorXd& p_coeffs,
                           const Eigen::VectorXd& angles) {
  const DiscretizedBoundary& b = solver.boundary();
  Eigen::ArrayXd t(b.n);
  for (int j = 0; j < b.n; ++j) t[j] = kTwoPi * j / b.n;
  Eigen::VectorXd p =
      trig_basis_eval(static_cast<int>(p_coeffs.size()), p_coeffs, t);
  Eigen::VectorXcd rhs = -(p.array() * dudn.values.array()).matrix();
  DensitySolution phi = solver.solve_cfie_rhs(rhs);
  return far_field(phi, angles);
}

LinearizedSystem build_system(ForwardSolver& solver,
                              const std::vector<DensitySolution>& dudn,
                              const std::vector<FarFieldData>& measured,
                              const PerturbationBasis& basis) {
  if (dudn.size() != measured.size() || dudn.empty())
    throw std::invalid_argument("build_system: need one density per record");
  int n = solver.boundary().n;
  int m = static_cast<int>(measured[0].angles.size());
  Eigen::MatrixXcd a_inf = assemble_farfield_combined(
      solver.k(), solver.eta(), solver.boundary(), measured[0].angles);
  // Z = C^{-T} A_inf^T, shared by all directions
  Eigen::MatrixXcd z = solver.solve_cfie_transpose(a_inf.transpose());
  Eigen::MatrixXd o = basis.eval_matrix(n);
  std::vector<Eigen::MatrixXcd> fprime;
  std::vector<Eigen::VectorXcd> residuals;
  for (size_t l = 0; l < dudn.size(); ++l) {
    if (dudn[l].kind != DensityKind::NormalDerivative)
      throw std::invalid_argument("build_system: densities must be du/dnu");
    // F'_l = -(Z^T diag(dudn) O)
    Eigen::MatrixXcd zl = dudn[l].values.asDiagonal() * (o.cast<Complex>());
    fprime.push_back(-(z.transpose() * zl));
    FarFieldData f = far_field(dudn[l], measured[l].angles);
    residuals.push_back(measured[l].values - f.values);
  }
  return stack_real(fprime, residuals, m, basis.dimension());
}

LinearizedSystem build_system_direct(ForwardSolver& solver,
                                     const std::vector<DensitySolution>& dudn,
                                     const std::vector<FarFieldData>& measured,
                                     const PerturbationBasis& basis) {
  if (dudn.size() != measured.size() || dudn.empty())
    throw std::invalid_argument("build_system_direct: size mismatch");
  int n = solver.boundary().n;
  int m = static_cast<int>(measured[0].angles.size());
  Eigen::MatrixXcd a_inf = assemble_farfield_combined(
      solver.k(), solver.eta(), solver.boundary(), measured[0].angles);
  Eigen::MatrixXd o = basis.eval_matrix(n);
  std::vector<Eigen::MatrixXcd> fprime;
  std::vector<Eigen::VectorXcd> residuals;
  for (size_t l = 0; l < dudn.size(); ++l) {
    Eigen::MatrixXcd rhs(n, basis.dimension());
    for (int q = 0; q < basis.dimension(); ++q)
      rhs.col(q) =
          -(o.col(q).cast<Complex>().array() * dudn[l].values.array()).matrix();
    Eigen::MatrixXcd phi = solver.solve_cfie_many(rhs);
    fprime.push_back(a_inf * phi);
    FarFieldData f = far_field(dudn[l], measured[l].angles);
    residuals.push_back(measured[l].values - f.values);
  }
  return stack_real(fprime, residuals, m, basis.dimension());
}

Eigen::VectorXd solve_least_squares(const LinearizedSystem& sys) {
  return sys.design.colPivHouseholderQr().solve(sys.rhs);
}

namespace {

// max_t |p(t)| on the quadrature grid
double step_sup_norm(const Eigen::VectorXd& p_coeffs, int n) {
  Eigen::ArrayXd t(n);
  for (int j = 0; j < n; ++j) t[j] = kTwoPi * j / n;
  return trig_basis_eval(static_cast<int>(p_coeffs.size()), p_coeffs, t)
      .cwiseAbs()
      .maxCoeff();
}

struct BacktrackOutcome {
  ClosedCurve curve;
  int backtracks = 0;
  bool ok = false;
};

BacktrackOutcome backtrack_until_simple(const ClosedCurve& curve,
                                        const Eigen::VectorXd& p,
                                        const NewtonControls& controls,
                                        int filter_b, int n1) {
  BacktrackOutcome out;
  for (int l = 0; l <= controls.max_backtracks; ++l) {
    double scale = controls.rho * std::pow(controls.lambda, l);
    ClosedCurve candidate = perturb(curve, p, scale);
    int ns = std::max(4096, 8 * candidate.bandwidth());
    if (!is_simple(candidate, ns)) continue;
    try {
      ClosedCurve filtered = filter_resample(candidate, filter_b, controls.Nb, n1);
      out.curve = std::move(filtered);
      out.backtracks = l;
      out.ok = true;
      return out;
    } catch (const SelfIntersectingCurve&) {
      continue;
    }
  }
  return out;
}

}  // namespace

NewtonStepResult newton_step(const ClosedCurve& curve,
                             const std::vector<IncidentWave>& waves,
                             const std::vector<FarFieldData>& measured,
                             const NewtonControls& controls,
                             const PerturbationBasis& basis, int n1,
                             int filter_b, const ForwardOptions& fw) {
  n1 = effective_n1(n1, curve, fw);
  StageEval ev = evaluate_curve(curve, waves, measured, n1, fw);
  LinearizedSystem sys = build_system(*ev.solver, ev.dudn, measured, basis);
  Eigen::VectorXd p = solve_least_squares(sys);
  NewtonStepResult res;
  res.report.residual_before = ev.residual;
  res.report.step_norm = step_sup_norm(p, ev.boundary->n);
  BacktrackOutcome bt = backtrack_until_simple(curve, p, controls, filter_b, n1);
  if (!bt.ok) {
    res.failed = true;
    res.what = "backtracking exhausted without a simple curve";
    res.curve = curve;
    return res;
  }
  res.curve = bt.curve;
  res.report.backtracks = bt.backtracks;
  StageEval ev2 = evaluate_curve(res.curve, waves, measured, n1, fw);
  res.report.residual_after = ev2.residual;
  return res;
}

std::pair<ClosedCurve, NewtonHistory> run_newton(
    const ClosedCurve& start, const std::vector<IncidentWave>& waves,
    const std::vector<FarFieldData>& measured, const NewtonControls& controls,
    const PerturbationBasis& basis, int n1, int filter_b,
    const ForwardOptions& fw) {
  NewtonHistory hist;
  ClosedCurve curve = start;
  n1 = effective_n1(n1, curve, fw);
  StageEval ev = evaluate_curve(curve, waves, measured, n1, fw);
  for (int iter = 1; iter <= controls.max_iters; ++iter) {
    if (ev.residual < controls.residual_tol) {
      hist.converged = true;
      hist.stop_reason = "residual tolerance reached";
      break;
    }
    LinearizedSystem sys = build_system(*ev.solver, ev.dudn, measured, basis);
    Eigen::VectorXd p = solve_least_squares(sys);
    double sup = step_sup_norm(p, ev.boundary->n);
    if (sup < controls.min_step_tol) {
      hist.converged = true;
      hist.stop_reason = "step norm below tolerance";
      break;
    }
    BacktrackOutcome bt =
        backtrack_until_simple(curve, p, controls, filter_b, n1);
    if (!bt.ok) {
      hist.stop_reason = "step failure: backtracking exhausted";
      break;
    }
    StepReport rep;
    rep.iter = iter;
    rep.residual_before = ev.residual;
    rep.step_norm = sup;
    rep.backtracks = bt.backtracks;
    curve = bt.curve;
    ev = evaluate_curve(curve, waves, measured, n1, fw);
    rep.residual_after = ev.residual;
    hist.steps.push_back(rep);
    hist.iterates.push_back(curve);
    if (iter == controls.max_iters) hist.stop_reason = "max iterations";
  }
  if (hist.stop_reason.empty()) hist.stop_reason = "max iterations";
  hist.final_residual = ev.residual;
  return {curve, hist};
}

}  // namespace helio2d
