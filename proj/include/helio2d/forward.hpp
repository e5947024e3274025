#pragma once

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "helio2d/hodlr.hpp"
#include "helio2d/potentials.hpp"

namespace helio2d {

struct IncidentWave {
  double k;
  Eigen::Vector2d d;  // unit propagation direction

  IncidentWave(double k_, const Eigen::Vector2d& d_);
};

enum class DensityKind { CfieDensity, NormalDerivative };

struct DensitySolution {
  DensityKind kind;
  double k = 0.0;
  double eta = 0.0;
  Eigen::VectorXcd values;
  std::shared_ptr<const DiscretizedBoundary> boundary;
  std::optional<Eigen::Vector2d> direction;  // incident direction when known
};

struct FarFieldData {
  double k = 0.0;
  Eigen::Vector2d direction{1.0, 0.0};
  Eigen::VectorXd angles;
  Eigen::VectorXcd values;
};

enum class SolverBackend { Dense, Hodlr, Auto };

struct ForwardOptions {
  SolverBackend backend = SolverBackend::Auto;
  int dense_threshold = 4096;  // Auto switches to HODLR above this N
  double hodlr_eps = 1e-10;
  int hodlr_leaf = 128;
  int rule_order = 16;
  double eta = -1.0;  // <0: max(k,1)
};

// e^{ik x.d} at the boundary nodes, and its normal derivative ik (d.nu) u_inc
Eigen::VectorXcd incident_trace(const IncidentWave& w,
                                const DiscretizedBoundary& b);
Eigen::VectorXcd incident_normal_derivative(const IncidentWave& w,
                                            const DiscretizedBoundary& b);

// Factorization cache for one (boundary, k): solves the combined field
// equation (1/2 I + D - i eta S) phi = rhs and the Green representation
// equation (1/2 I + S' - i eta S) dudn = du_inc/dnu - i eta u_inc. Immutable
// after the lazy factorizations; concurrent solves are safe.
class ForwardSolver {
 public:
  ForwardSolver(std::shared_ptr<const DiscretizedBoundary> boundary, double k,
                ForwardOptions opts = {});

  const DiscretizedBoundary& boundary() const { return *boundary_; }
  std::shared_ptr<const DiscretizedBoundary> boundary_ptr() const {
    return boundary_;
  }
  double k() const { return k_; }
  double eta() const { return eta_; }
  bool using_hodlr() const { return use_hodlr_; }
  const KernelAssembler& assembler() const { return *assembler_; }

  // scattering solve: rhs = -u_inc
  DensitySolution solve_cfie(const IncidentWave& wave);
  // Dirichlet data g for the radiating field (rhs of the CFIE)
  DensitySolution solve_cfie_rhs(const Eigen::VectorXcd& rhs);
  Eigen::MatrixXcd solve_cfie_many(const Eigen::MatrixXcd& rhs);
  Eigen::MatrixXcd solve_cfie_transpose(const Eigen::MatrixXcd& rhs);

  DensitySolution solve_green(const IncidentWave& wave);

 private:
  void ensure_cfie();
  void ensure_green();
  Eigen::MatrixXcd cfie_solve_impl(const Eigen::MatrixXcd& rhs);

  std::shared_ptr<const DiscretizedBoundary> boundary_;
  double k_, eta_;
  ForwardOptions opts_;
  bool use_hodlr_ = false;
  std::shared_ptr<KernelAssembler> assembler_;
  // one slot per operator kind
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> cfie_lu_;
  std::optional<HodlrMatrix> cfie_hodlr_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> green_lu_;
  std::optional<HodlrMatrix> green_hodlr_;
};

// far-field pattern of the radiating field represented by the density
FarFieldData far_field(const DensitySolution& density,
                       const Eigen::VectorXd& angles);

// scattered field at exterior target points
Eigen::VectorXcd scattered_field(const DensitySolution& density,
                                 const Eigen::ArrayX2d& targets);

// quadrature sizes: data synthesis and inversion rules
int synthesis_quadrature_n(double k, double perimeter);
int inversion_quadrature_n(double k, double perimeter, double factor);

}  // namespace helio2d
