#include "helio2d/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "helio2d/specfun.hpp"
#include "helio2d/threads.hpp"

namespace helio2d {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// kernel value (including speed factor) from the separation e = y - x;
// nu_x is the target normal, nu_y the source normal
inline Complex layer_kernel_diff(LayerKind kind, double k, double eta,
                                 const Eigen::Vector2d& e,
                                 const Eigen::Vector2d& nu_x,
                                 const Eigen::Vector2d& nu_y, double speed_y) {
  double r = e.norm();
  specfun::Hankel01 h = specfun::hankel01_fast(k * r);
  Complex val;
  switch (kind) {
    case LayerKind::S:
      val = Complex(0.0, 0.25) * h.h0;
      break;
    case LayerKind::D:
      val = Complex(0.0, -0.25 * k) * h.h1 * (e.dot(nu_y) / r);
      break;
    case LayerKind::Sprime:
      val = Complex(0.0, 0.25 * k) * h.h1 * (e.dot(nu_x) / r);
      break;
    case LayerKind::Cfie:
      // D - i eta S
      val = Complex(0.0, -0.25 * k) * h.h1 * (e.dot(nu_y) / r) +
            0.25 * eta * h.h0;
      break;
    case LayerKind::Green:
      // S' - i eta S
      val = Complex(0.0, 0.25 * k) * h.h1 * (e.dot(nu_x) / r) +
            0.25 * eta * h.h0;
      break;
  }
  return val * speed_y;
}

inline Complex layer_kernel(LayerKind kind, double k, double eta,
                            const Eigen::Vector2d& x, const Eigen::Vector2d& nu_x,
                            const Eigen::Vector2d& y, const Eigen::Vector2d& nu_y,
                            double speed_y) {
  return layer_kernel_diff(kind, k, eta, y - x, nu_x, nu_y, speed_y);
}

inline bool has_identity(LayerKind kind) {
  return kind == LayerKind::Cfie || kind == LayerKind::Green;
}

}  // namespace

double default_eta(double k) { return std::max(k, 1.0); }

Eigen::VectorXd measurement_angles(int M) {
  if (M < 1) throw std::invalid_argument("measurement_angles: M >= 1");
  Eigen::VectorXd a(M);
  for (int l = 1; l <= M; ++l) a[l - 1] = (2.0 * l - 1.0) * M_PI / M;
  return a;
}

KernelAssembler::KernelAssembler(
    std::shared_ptr<const DiscretizedBoundary> boundary, double k, double eta,
    const AlpertRule& rule)
    : boundary_(std::move(boundary)),
      k_(k),
      eta_(eta < 0 ? default_eta(k) : eta),
      layout_(AlpertLayout::build(rule, boundary_->n)) {
  if (!(k > 0)) throw std::invalid_argument("KernelAssembler: k > 0 required");
  int N = boundary_->n;
  aux_diff_.resize(layout_.aux.size());
  aux_normal_.resize(layout_.aux.size());
  aux_speed_.resize(layout_.aux.size());
  band_ = layout_.a;
  for (size_t m = 0; m < layout_.aux.size(); ++m) {
    const AlpertAux& ax = layout_.aux[m];
    band_ = std::max(band_,
                     std::max(std::abs(ax.first),
                              std::abs(ax.first + static_cast<int>(ax.stencil.size()) - 1)));
    Eigen::ArrayX2d der;
    boundary_->curve.eval_grid(N, ax.offset, nullptr, &der);
    aux_diff_[m] = boundary_->curve.eval_grid_difference(N, ax.offset);
    aux_speed_[m].resize(N);
    aux_normal_[m].resize(N, 2);
    for (int j = 0; j < N; ++j) {
      double sp = std::hypot(der(j, 0), der(j, 1));
      aux_speed_[m][j] = sp;
      aux_normal_[m](j, 0) = der(j, 1) / sp;
      aux_normal_[m](j, 1) = -der(j, 0) / sp;
    }
  }
}

Complex KernelAssembler::kernel_at_node(LayerKind kind, int i, int j) const {
  const auto& b = *boundary_;
  return layer_kernel(kind, k_, eta_, b.nodes.row(i).matrix().transpose(),
                      b.normals.row(i).matrix().transpose(),
                      b.nodes.row(j).matrix().transpose(),
                      b.normals.row(j).matrix().transpose(), b.speeds[j]);
}

Complex KernelAssembler::kernel_at_aux(LayerKind kind, int i, int m) const {
  const auto& b = *boundary_;
  return layer_kernel_diff(kind, k_, eta_,
                           aux_diff_[m].row(i).matrix().transpose(),
                           b.normals.row(i).matrix().transpose(),
                           aux_normal_[m].row(i).matrix().transpose(),
                           aux_speed_[m][i]);
}

Complex KernelAssembler::entry_smooth(LayerKind kind, int i, int j) const {
  if (i == j)
    throw std::invalid_argument("entry_smooth: diagonal is singular");
  return layout_.h * kernel_at_node(kind, i, j);
}

Complex KernelAssembler::entry(LayerKind kind, int i, int j) const {
  int N = layout_.n;
  int d = std::abs(i - j);
  d = std::min(d, N - d);
  Complex val = 0.0;
  if (d >= layout_.a) val = layout_.h * kernel_at_node(kind, i, j);
  if (d <= band_) {
    for (size_t m = 0; m < layout_.aux.size(); ++m) {
      const AlpertAux& ax = layout_.aux[m];
      int q = static_cast<int>(ax.stencil.size());
      // signed offset of column j relative to row i, wrapped
      int off = j - i;
      if (off > N / 2) off -= N;
      if (off < -N / 2) off += N;
      int idx = off - ax.first;
      if (idx < 0 || idx >= q) continue;
      val += layout_.h * ax.weight * ax.stencil[idx] * kernel_at_aux(kind, i, m);
    }
  }
  if (has_identity(kind) && i == j) val += 0.5;
  return val;
}

Eigen::MatrixXcd KernelAssembler::assemble(LayerKind kind) const {
  int N = layout_.n;
  Eigen::MatrixXcd out(N, N);
  parallel_for(N, [&](std::int64_t lo, std::int64_t hi) {
    for (int i = static_cast<int>(lo); i < hi; ++i) {
      for (int j = 0; j < N; ++j) {
        int d = std::abs(i - j);
        d = std::min(d, N - d);
        out(i, j) = d >= layout_.a ? layout_.h * kernel_at_node(kind, i, j)
                                   : Complex(0.0, 0.0);
      }
      for (size_t m = 0; m < layout_.aux.size(); ++m) {
        const AlpertAux& ax = layout_.aux[m];
        Complex c = layout_.h * ax.weight * kernel_at_aux(kind, i, m);
        int q = static_cast<int>(ax.stencil.size());
        for (int s = 0; s < q; ++s) {
          int col = ((i + ax.first + s) % N + N) % N;
          out(i, col) += c * ax.stencil[s];
        }
      }
      if (has_identity(kind)) out(i, i) += 0.5;
    }
  });
  return out;
}

BoundaryOperatorMatrix assemble_layer(
    LayerKind kind, double k, std::shared_ptr<const DiscretizedBoundary> boundary,
    const AlpertRule& rule, double eta) {
  KernelAssembler asmb(boundary, k, eta, rule);
  BoundaryOperatorMatrix out;
  out.kind = kind;
  out.k = k;
  out.eta = asmb.eta();
  out.entries = asmb.assemble(kind);
  out.boundary = std::move(boundary);
  return out;
}

FarFieldMatrix assemble_farfield(FarKind kind, double k,
                                 const DiscretizedBoundary& boundary,
                                 const Eigen::VectorXd& angles) {
  if (!(k > 0)) throw std::invalid_argument("assemble_farfield: k > 0");
  int M = static_cast<int>(angles.size());
  int N = boundary.n;
  FarFieldMatrix out;
  out.kind = kind;
  out.k = k;
  out.angles = angles;
  out.entries.resize(M, N);
  double h = kTwoPi / N;
  Complex pref = kind == FarKind::Sinf
                     ? std::polar(1.0, M_PI / 4.0) / std::sqrt(8.0 * M_PI * k)
                     : std::polar(1.0, -M_PI / 4.0) * std::sqrt(k / (8.0 * M_PI));
  for (int l = 0; l < M; ++l) {
    Eigen::Vector2d xhat(std::cos(angles[l]), std::sin(angles[l]));
    for (int j = 0; j < N; ++j) {
      Eigen::Vector2d y = boundary.nodes.row(j).matrix().transpose();
      Complex phase = std::polar(1.0, -k * xhat.dot(y));
      double factor = kind == FarKind::Sinf
                          ? 1.0
                          : xhat.dot(boundary.normals.row(j).matrix().transpose());
      out.entries(l, j) = pref * phase * factor * boundary.speeds[j] * h;
    }
  }
  return out;
}

Eigen::MatrixXcd assemble_farfield_combined(double k, double eta,
                                            const DiscretizedBoundary& boundary,
                                            const Eigen::VectorXd& angles) {
  FarFieldMatrix s = assemble_farfield(FarKind::Sinf, k, boundary, angles);
  FarFieldMatrix d = assemble_farfield(FarKind::Dinf, k, boundary, angles);
  return d.entries - Complex(0.0, eta) * s.entries;
}

Eigen::VectorXcd eval_layer_potential(LayerKind kind, double k, double eta,
                                      const DiscretizedBoundary& boundary,
                                      const Eigen::VectorXcd& density,
                                      const Eigen::ArrayX2d& targets) {
  if (density.size() != boundary.n)
    throw std::invalid_argument("eval_layer_potential: density size mismatch");
  int N = boundary.n;
  double h = kTwoPi / N;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(targets.rows());
  for (int t = 0; t < targets.rows(); ++t) {
    Eigen::Vector2d x = targets.row(t).matrix().transpose();
    Complex acc = 0.0;
    for (int j = 0; j < N; ++j) {
      Eigen::Vector2d y = boundary.nodes.row(j).matrix().transpose();
      Eigen::Vector2d nu = boundary.normals.row(j).matrix().transpose();
      Eigen::Vector2d e = y - x;
      double r = e.norm();
      specfun::Hankel01 hk = specfun::hankel01_fast(k * r);
      Complex val;
      switch (kind) {
        case LayerKind::S:
          val = Complex(0.0, 0.25) * hk.h0;
          break;
        case LayerKind::D:
          val = Complex(0.0, -0.25 * k) * hk.h1 * (e.dot(nu) / r);
          break;
        case LayerKind::Cfie:
          val = Complex(0.0, -0.25 * k) * hk.h1 * (e.dot(nu) / r) +
                0.25 * eta * hk.h0;
          break;
        default:
          throw std::invalid_argument("eval_layer_potential: unsupported kind");
      }
      acc += h * val * boundary.speeds[j] * density[j];
    }
    out[t] = acc;
  }
  return out;
}

}  // namespace helio2d
