#pragma once

#include <complex>
#include <memory>

#include <Eigen/Core>

#include "helio2d/curve.hpp"
#include "helio2d/quadrature.hpp"

namespace helio2d {

using Complex = std::complex<double>;

enum class LayerKind { S, D, Sprime, Cfie, Green };
enum class FarKind { Sinf, Dinf };

struct BoundaryOperatorMatrix {
  LayerKind kind;
  double k = 0.0;
  double eta = 0.0;
  Eigen::MatrixXcd entries;
  std::shared_ptr<const DiscretizedBoundary> boundary;
};

struct FarFieldMatrix {
  FarKind kind;
  double k = 0.0;
  Eigen::VectorXd angles;
  Eigen::MatrixXcd entries;  // M x N
};

// Nystrom matrix entries for one boundary and frequency, with the Alpert
// correction band. Holds the shifted-grid geometry needed at auxiliary nodes;
// entry evaluation is pure and thread-safe after construction.
class KernelAssembler {
 public:
  KernelAssembler(std::shared_ptr<const DiscretizedBoundary> boundary, double k,
                  double eta, const AlpertRule& rule = AlpertRule::get(16));

  int n() const { return layout_.n; }
  double k() const { return k_; }
  double eta() const { return eta_; }
  const DiscretizedBoundary& boundary() const { return *boundary_; }

  // corrections vanish beyond this periodic index distance
  int band_halfwidth() const { return band_; }

  Complex entry(LayerKind kind, int i, int j) const;
  // plain trapezoid formula, no skip band, no aux terms (i != j)
  Complex entry_smooth(LayerKind kind, int i, int j) const;

  Eigen::MatrixXcd assemble(LayerKind kind) const;

 private:
  Complex kernel_at_node(LayerKind kind, int i, int j) const;
  Complex kernel_at_aux(LayerKind kind, int i, int aux_index) const;

  std::shared_ptr<const DiscretizedBoundary> boundary_;
  double k_, eta_;
  AlpertLayout layout_;
  int band_ = 0;
  // geometry at t_j + offset*h for every aux offset; positions are stored as
  // spectrally evaluated differences gamma(t_j+off) - gamma(t_j) to keep the
  // nearly-coincident kernel arguments fully accurate
  std::vector<Eigen::ArrayX2d> aux_diff_;
  std::vector<Eigen::ArrayX2d> aux_normal_;
  std::vector<Eigen::ArrayXd> aux_speed_;
};

BoundaryOperatorMatrix assemble_layer(
    LayerKind kind, double k, std::shared_ptr<const DiscretizedBoundary> boundary,
    const AlpertRule& rule = AlpertRule::get(16), double eta = -1.0);

FarFieldMatrix assemble_farfield(FarKind kind, double k,
                                 const DiscretizedBoundary& boundary,
                                 const Eigen::VectorXd& angles);

// D_inf - i eta S_inf
Eigen::MatrixXcd assemble_farfield_combined(double k, double eta,
                                            const DiscretizedBoundary& boundary,
                                            const Eigen::VectorXd& angles);

// Layer potentials evaluated off the boundary (plain trapezoid; targets must
// be well separated from the curve). kind: S, D or Cfie (= D - i eta S).
Eigen::VectorXcd eval_layer_potential(LayerKind kind, double k, double eta,
                                      const DiscretizedBoundary& boundary,
                                      const Eigen::VectorXcd& density,
                                      const Eigen::ArrayX2d& targets);

// coupling parameter eta = max(k, 1)
double default_eta(double k);

// theta_l = (2l-1) pi / M, l = 1..M
Eigen::VectorXd measurement_angles(int M);

}  // namespace helio2d
