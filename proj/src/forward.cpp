#include "helio2d/forward.hpp"

#include <cmath>
#include <stdexcept>

namespace helio2d {

namespace {
using Complex = std::complex<double>;
}

IncidentWave::IncidentWave(double k_, const Eigen::Vector2d& d_) : k(k_), d(d_) {
  if (!(k > 0)) throw std::invalid_argument("IncidentWave: k > 0 required");
  if (std::abs(d.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("IncidentWave: |d| must be 1");
}

Eigen::VectorXcd incident_trace(const IncidentWave& w,
                                const DiscretizedBoundary& b) {
  Eigen::VectorXcd out(b.n);
  for (int j = 0; j < b.n; ++j) {
    double phase = w.k * (w.d.x() * b.nodes(j, 0) + w.d.y() * b.nodes(j, 1));
    out[j] = std::polar(1.0, phase);
  }
  return out;
}

Eigen::VectorXcd incident_normal_derivative(const IncidentWave& w,
                                            const DiscretizedBoundary& b) {
  Eigen::VectorXcd u = incident_trace(w, b);
  for (int j = 0; j < b.n; ++j) {
    double dn = w.d.x() * b.normals(j, 0) + w.d.y() * b.normals(j, 1);
    u[j] *= Complex(0.0, w.k * dn);
  }
  return u;
}

ForwardSolver::ForwardSolver(std::shared_ptr<const DiscretizedBoundary> boundary,
                             double k, ForwardOptions opts)
    : boundary_(std::move(boundary)),
      k_(k),
      eta_(opts.eta < 0 ? default_eta(k) : opts.eta),
      opts_(opts) {
  if (!boundary_) throw std::invalid_argument("ForwardSolver: null boundary");
  switch (opts_.backend) {
    case SolverBackend::Dense:
      use_hodlr_ = false;
      break;
    case SolverBackend::Hodlr:
      use_hodlr_ = true;
      break;
    case SolverBackend::Auto:
      use_hodlr_ = boundary_->n > opts_.dense_threshold;
      break;
  }
  assembler_ = std::make_shared<KernelAssembler>(
      boundary_, k_, eta_, AlpertRule::get(opts_.rule_order));
}

void ForwardSolver::ensure_cfie() {
  if (cfie_lu_ || cfie_hodlr_) return;
  if (use_hodlr_) {
    const KernelAssembler& a = *assembler_;
    HodlrOptions ho{opts_.hodlr_leaf, opts_.hodlr_eps, a.band_halfwidth()};
    cfie_hodlr_ = HodlrMatrix::compress_split(
        [&a](int i, int j) { return a.entry(LayerKind::Cfie, i, j); },
        [&a](int i, int j) { return a.entry_smooth(LayerKind::Cfie, i, j); },
        boundary_->n, ho);
    cfie_hodlr_->factorize();
  } else {
    cfie_lu_.emplace(assembler_->assemble(LayerKind::Cfie));
  }
}

void ForwardSolver::ensure_green() {
  if (green_lu_ || green_hodlr_) return;
  if (use_hodlr_) {
    const KernelAssembler& a = *assembler_;
    HodlrOptions ho{opts_.hodlr_leaf, opts_.hodlr_eps, a.band_halfwidth()};
    green_hodlr_ = HodlrMatrix::compress_split(
        [&a](int i, int j) { return a.entry(LayerKind::Green, i, j); },
        [&a](int i, int j) { return a.entry_smooth(LayerKind::Green, i, j); },
        boundary_->n, ho);
    green_hodlr_->factorize();
  } else {
    green_lu_.emplace(assembler_->assemble(LayerKind::Green));
  }
}

Eigen::MatrixXcd ForwardSolver::cfie_solve_impl(const Eigen::MatrixXcd& rhs) {
  ensure_cfie();
  return use_hodlr_ ? cfie_hodlr_->solve(rhs) : cfie_lu_->solve(rhs);
}

DensitySolution ForwardSolver::solve_cfie(const IncidentWave& wave) {
  if (std::abs(wave.k - k_) > 1e-14)
    throw std::invalid_argument("solve_cfie: wave frequency mismatch");
  DensitySolution out = solve_cfie_rhs(-incident_trace(wave, *boundary_));
  out.direction = wave.d;
  return out;
}

DensitySolution ForwardSolver::solve_cfie_rhs(const Eigen::VectorXcd& rhs) {
  if (rhs.size() != boundary_->n)
    throw std::invalid_argument("solve_cfie_rhs: size mismatch");
  DensitySolution out;
  out.kind = DensityKind::CfieDensity;
  out.k = k_;
  out.eta = eta_;
  out.boundary = boundary_;
  out.values = cfie_solve_impl(rhs);
  return out;
}

Eigen::MatrixXcd ForwardSolver::solve_cfie_many(const Eigen::MatrixXcd& rhs) {
  if (rhs.rows() != boundary_->n)
    throw std::invalid_argument("solve_cfie_many: size mismatch");
  return cfie_solve_impl(rhs);
}

Eigen::MatrixXcd ForwardSolver::solve_cfie_transpose(const Eigen::MatrixXcd& rhs) {
  if (rhs.rows() != boundary_->n)
    throw std::invalid_argument("solve_cfie_transpose: size mismatch");
  ensure_cfie();
  return use_hodlr_ ? cfie_hodlr_->solve_transpose(rhs)
                    : cfie_lu_->transpose().solve(rhs);
}

DensitySolution ForwardSolver::solve_green(const IncidentWave& wave) {
  if (std::abs(wave.k - k_) > 1e-14)
    throw std::invalid_argument("solve_green: wave frequency mismatch");
  ensure_green();
  Eigen::VectorXcd rhs = incident_normal_derivative(wave, *boundary_) -
                         Complex(0.0, eta_) * incident_trace(wave, *boundary_);
  DensitySolution out;
  out.kind = DensityKind::NormalDerivative;
  out.k = k_;
  out.eta = eta_;
  out.boundary = boundary_;
  out.direction = wave.d;
  out.values = use_hodlr_ ? green_hodlr_->solve(rhs) : green_lu_->solve(rhs);
  return out;
}

FarFieldData far_field(const DensitySolution& density,
                       const Eigen::VectorXd& angles) {
  FarFieldData out;
  out.k = density.k;
  out.angles = angles;
  if (density.direction) out.direction = *density.direction;
  if (density.kind == DensityKind::CfieDensity) {
    Eigen::MatrixXcd a_inf = assemble_farfield_combined(
        density.k, density.eta, *density.boundary, angles);
    out.values = a_inf * density.values;
  } else {
    FarFieldMatrix s_inf =
        assemble_farfield(FarKind::Sinf, density.k, *density.boundary, angles);
    out.values = -(s_inf.entries * density.values);
  }
  return out;
}

Eigen::VectorXcd scattered_field(const DensitySolution& density,
                                 const Eigen::ArrayX2d& targets) {
  if (density.kind == DensityKind::CfieDensity) {
    return eval_layer_potential(LayerKind::Cfie, density.k, density.eta,
                                *density.boundary, density.values, targets);
  }
  // Green representation: u_scat = -S dudn
  return -eval_layer_potential(LayerKind::S, density.k, density.eta,
                               *density.boundary, density.values, targets);
}

int synthesis_quadrature_n(double k, double perimeter) {
  return static_cast<int>(std::ceil(100.0 * k * perimeter));
}

int inversion_quadrature_n(double k, double perimeter, double factor) {
  return static_cast<int>(std::ceil(factor * k * perimeter));
}

}  // namespace helio2d
