#include <doctest.h>

#include <Eigen/Dense>

#include "helio2d/inverse.hpp"
#include "oracles.hpp"

using namespace helio2d;
using Complex = std::complex<double>;

namespace {

std::shared_ptr<ForwardSolver> make_solver(const ClosedCurve& c, double k,
                                           int n) {
  auto boundary = std::make_shared<DiscretizedBoundary>(sample(c, n));
  return std::make_shared<ForwardSolver>(boundary, k);
}

Eigen::VectorXcd far_of(const ClosedCurve& c, double k, int n,
                        const IncidentWave& w, const Eigen::VectorXd& th) {
  auto s = make_solver(c, k, n);
  return far_field(s->solve_green(w), th).values;
}

}  // namespace

TEST_CASE("frechet_apply: zero perturbation gives zero far field") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  auto solver = make_solver(star, 2.0, 256);
  auto dudn = solver->solve_green(IncidentWave(2.0, {1.0, 0.0}));
  auto v = frechet_apply(*solver, dudn, Eigen::VectorXd::Zero(5),
                         measurement_angles(16));
  CHECK(v.values.norm() == 0.0);
}

TEST_CASE("frechet_apply passes the finite-difference ratio test") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  double k = 2.0;
  int n = 512;
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(32);
  auto solver = make_solver(star, k, n);
  auto dudn = solver->solve_green(w);
  Eigen::VectorXd p(5);
  p << 0.3, -0.2, 0.5, 0.1, -0.4;
  Eigen::VectorXcd deriv = frechet_apply(*solver, dudn, p, th).values;
  Eigen::VectorXcd f0 = far_of(star, k, n, w, th);
  double prev = -1.0;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    Eigen::VectorXcd fh = far_of(perturb(star, p, h), k, n, w, th);
    double rel = ((fh - f0) / h - deriv).norm() / deriv.norm();
    if (prev > 0) CHECK(rel <= 0.2 * prev);  // first order in h
    prev = rel;
  }
  CHECK(prev <= 1e-3);  // at h = 1e-4
}

TEST_CASE("circle radial derivative matches the differentiated Mie series") {
  double k = 1.0;
  int n = 256;
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(32);
  auto solver = make_solver(ClosedCurve::circle(1.0), k, n);
  auto dudn = solver->solve_green(w);
  Eigen::VectorXd p(1);
  p << 1.0;  // uniform radial motion
  Eigen::VectorXcd deriv = frechet_apply(*solver, dudn, p, th).values;
  double h = 1e-5;
  Eigen::VectorXcd mie_plus = oracles::mie_far_field(k, 1.0 + h, {1.0, 0.0}, th);
  Eigen::VectorXcd mie_minus = oracles::mie_far_field(k, 1.0 - h, {1.0, 0.0}, th);
  Eigen::VectorXcd fd = (mie_plus - mie_minus) / (2.0 * h);
  CHECK((fd - deriv).norm() / deriv.norm() <= 1e-6);
}

TEST_CASE("transpose-trick and direct system assembly agree") {
  auto circle = ClosedCurve::circle(1.0);
  double k = 1.0;
  auto solver = make_solver(circle, k, 128);
  Eigen::VectorXd th = measurement_angles(16);
  std::vector<DensitySolution> dudn{solver->solve_green(IncidentWave(k, {1.0, 0.0}))};
  FarFieldData meas = far_field(dudn[0], th);
  meas.values.array() += Complex(0.01, -0.02);
  std::vector<FarFieldData> mv{meas};
  PerturbationBasis basis(5);
  auto s1 = build_system(*solver, dudn, mv, basis);
  auto s2 = build_system_direct(*solver, dudn, mv, basis);
  CHECK((s1.design - s2.design).norm() / s1.design.norm() <= 1e-10);
  CHECK((s1.rhs - s2.rhs).norm() <= 1e-10 * (1.0 + s1.rhs.norm()));
}

TEST_CASE("exact data gives a zero update") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  double k = 1.0;
  int n = 256;
  auto solver = make_solver(star, k, n);
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(32);
  std::vector<DensitySolution> dudn{solver->solve_green(w)};
  std::vector<FarFieldData> mv{far_field(dudn[0], th)};
  auto sys = build_system(*solver, dudn, mv, PerturbationBasis(5));
  CHECK(sys.rhs.norm() <= 1e-13);
  CHECK(solve_least_squares(sys).norm() <= 1e-12);
}

TEST_CASE("least-squares solution satisfies the normal equations") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  double k = 2.0;
  auto solver = make_solver(star, k, 256);
  Eigen::VectorXd th = measurement_angles(32);
  IncidentWave w(k, {0.0, 1.0});
  std::vector<DensitySolution> dudn{solver->solve_green(w)};
  FarFieldData meas = far_field(dudn[0], th);
  for (int i = 0; i < meas.values.size(); ++i)
    meas.values[i] += 0.03 * std::polar(1.0, 1.7 * i);
  std::vector<FarFieldData> mv{meas};
  auto sys = build_system(*solver, dudn, mv, PerturbationBasis(7));
  Eigen::VectorXd p = solve_least_squares(sys);
  Eigen::VectorXd grad = sys.design.transpose() * (sys.design * p - sys.rhs);
  CHECK(grad.norm() <= 1e-10 * sys.design.norm() * sys.rhs.norm());
}

TEST_CASE("stacking directions only improves conditioning") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  double k = 3.0;
  auto solver = make_solver(star, k, 384);
  Eigen::VectorXd th = measurement_angles(32);
  PerturbationBasis basis(7);
  std::vector<DensitySolution> dudn;
  std::vector<FarFieldData> mv;
  std::vector<double> single_sigma_min;
  for (int l = 0; l < 4; ++l) {
    double a = 2.0 * M_PI * (l + 1) / 4.0;
    IncidentWave w(k, {std::cos(a), std::sin(a)});
    std::vector<DensitySolution> one{solver->solve_green(w)};
    std::vector<FarFieldData> mone{far_field(one[0], th)};
    mone[0].values.array() += 0.01;
    auto sys = build_system(*solver, one, mone, basis);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.design);
    single_sigma_min.push_back(svd.singularValues().minCoeff());
    dudn.push_back(one[0]);
    mv.push_back(mone[0]);
  }
  auto stacked = build_system(*solver, dudn, mv, basis);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked.design);
  double sig_min = svd.singularValues().minCoeff();
  for (double s : single_sigma_min) CHECK(sig_min >= s - 1e-12);
  // and the conditioning with four directions beats one direction
  auto sys1 = build_system(*solver, {dudn[0]}, {mv[0]}, basis);
  CHECK(stacked.cond() <= sys1.cond() * (1.0 + 1e-9));
}

TEST_CASE("underdetermined systems are rejected") {
  auto circle = ClosedCurve::circle(1.0);
  auto solver = make_solver(circle, 1.0, 128);
  Eigen::VectorXd th = measurement_angles(2);
  IncidentWave w(1.0, {1.0, 0.0});
  std::vector<DensitySolution> dudn{solver->solve_green(w)};
  std::vector<FarFieldData> mv{far_field(dudn[0], th)};
  CHECK_THROWS_AS(build_system(*solver, dudn, mv, PerturbationBasis(5)),
                  std::invalid_argument);
}

TEST_CASE("one newton step recovers the circle radius") {
  auto truth = ClosedCurve::circle(1.0);
  auto start = ClosedCurve::circle(0.9);
  double k = 1.0;
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(32);
  // Mie-series synthetic data (independent of the solver pipeline)
  FarFieldData meas;
  meas.k = k;
  meas.direction = w.d;
  meas.angles = th;
  meas.values = oracles::mie_far_field(k, 1.0, w.d, th);
  NewtonControls ctl;
  ctl.rho = 1.0;
  auto res = newton_step(start, {w}, {meas}, ctl, PerturbationBasis(0), 96, 3);
  REQUIRE_FALSE(res.failed);
  for (double t : {0.0, 1.0, 2.5, 4.0})
    CHECK(std::abs(res.curve.point(t).norm() - 1.0) <= 1e-3);
  CHECK(res.report.residual_after < 0.05 * res.report.residual_before);
}

TEST_CASE("backtracking rejects self-intersecting updates") {
  // aggressive step toward a deeply non-convex target forces damping
  auto start = ClosedCurve::circle(1.0);
  double k = 4.0;
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(48);
  FarFieldData meas;
  meas.k = k;
  meas.direction = w.d;
  meas.angles = th;
  meas.values = 40.0 * oracles::mie_far_field(k, 2.5, w.d, th);  // inconsistent, huge residual
  NewtonControls ctl;
  ctl.rho = 40.0;  // deliberately unsafe step scale
  ctl.max_backtracks = 30;
  auto res =
      newton_step(start, {w}, {meas}, ctl, PerturbationBasis(9), 128, 9);
  REQUIRE_FALSE(res.failed);
  CHECK(res.report.backtracks > 0);
  CHECK(is_simple(res.curve, 4096));
}

TEST_CASE("run_newton: already-converged data stops at once") {
  auto star = ClosedCurve::star(2.0, 0.2, 7);
  double k = 1.0;
  IncidentWave w(k, {1.0, 0.0});
  Eigen::VectorXd th = measurement_angles(32);
  Eigen::VectorXcd values = far_of(star, k, 256, w, th);
  FarFieldData meas{k, w.d, th, values};
  NewtonControls ctl;
  auto [curve, hist] =
      run_newton(star, {w}, {meas}, ctl, PerturbationBasis(3), 256, 3);
  CHECK(hist.converged);
  CHECK(hist.steps.empty());
  CHECK(hist.final_residual < ctl.residual_tol);
}

TEST_CASE("run_newton: monotone residual decrease on noiseless data") {
  // ellipse target from a circle start, two directions, no noise
  int n = 64;
  Eigen::VectorXd x(n), y(n);
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * M_PI * j / n;
    x[j] = 1.15 * std::cos(t);
    y[j] = 0.9 * std::sin(t);
  }
  auto truth = ClosedCurve::from_samples(x, y);
  double k = 1.5;
  std::vector<IncidentWave> waves{IncidentWave(k, {1.0, 0.0}),
                                  IncidentWave(k, {0.0, 1.0})};
  Eigen::VectorXd th = measurement_angles(24);
  std::vector<FarFieldData> meas;
  for (const auto& w : waves)
    meas.push_back({k, w.d, th, far_of(truth, k, 192, w, th)});
  NewtonControls ctl;
  ctl.rho = 0.5;
  ctl.max_iters = 12;
  ctl.residual_tol = 1e-6;
  ctl.min_step_tol = 1e-7;
  auto [curve, hist] =
      run_newton(ClosedCurve::circle(1.0), waves, meas, ctl,
                 PerturbationBasis(5), 96, 5);
  REQUIRE(hist.steps.size() >= 3);
  for (const auto& s : hist.steps) CHECK(s.residual_after < s.residual_before);
  CHECK(hist.final_residual < 0.05 * hist.steps.front().residual_before);
}
