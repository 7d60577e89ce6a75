#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <array>
#include <memory>
#include <optional>

#include "metric.hpp"

namespace fdf {

/// Class of a K 1-cell by the dimensions of its originating M-pair:
/// along an M-edge, inside an M-face, or through an M-volume.
enum class EdgeClass : int { NodeEdge = 0, EdgeFace = 1, FaceVolume = 2 };

std::vector<EdgeClass> classify_edges(const FormanComplex& fc);

/// Per-K-edge diffusivity (units L^2/T), all strictly positive.
struct DiffusivityAssignment {
  Eigen::VectorXd alpha;

  static DiffusivityAssignment uniform(const FormanComplex& fc, double value);
};

/// Axis-aligned plane selector for boundary surfaces.
struct PlaneSurface {
  int axis = 2;          // 0=x, 1=y, 2=z
  double coord = 0.0;
  double tol = 1e-9;     // absolute, scaled by the caller if needed
};

/// K-nodes whose originating M-cell lies entirely in the plane.
std::vector<int> surface_knodes(const FormanComplex& fc, const PlaneSurface& s);

struct BoundaryConditionSet {
  std::vector<std::pair<int, double>> dirichlet;    // (K-node, value)
  std::vector<std::pair<int, double>> neumann_flux; // (K-node, total flux)
};

struct SteadySolution {
  Cochain u;            // full-length 0-cochain (Dirichlet values included)
  double residual = 0;  // relative residual of the reduced solve
};

/// Symmetric diffusion system S = (d^0)^T diag(alpha) W_1 d^0 with Dirichlet
/// elimination. The modified Laplacian is W_0^-1 S; solving keeps the
/// symmetric form and W_0 only enters transient mass terms.
class DiffusionSystem {
public:
  DiffusionSystem(std::shared_ptr<const MetricContext> mc,
                  DiffusivityAssignment da);

  const MetricContext& metric() const { return *mc_; }
  const DiffusivityAssignment& assignment() const { return da_; }

  /// Replaces the diffusivities (sparsity pattern of S is preserved).
  void set_alpha(const Eigen::VectorXd& alpha);

  /// Moves Dirichlet columns to the right-hand side and removes their
  /// rows/columns; Neumann data lands on the right-hand side directly.
  void apply_boundary_conditions(const BoundaryConditionSet& bc);

  SteadySolution solve_steady(double tol = 1e-10) const;

  /// One implicit step of du/dt = -Laplacian_alpha u under the applied BCs.
  Cochain step_transient(const Cochain& u, double dt, double tol = 1e-10) const;

  /// Dense operator of the modified Laplacian W_0^-1 S (for small complexes).
  Eigen::SparseMatrix<double> modified_laplacian() const;

  const Eigen::SparseMatrix<double>& symmetric_matrix() const { return S_; }
  bool reduced() const { return reduced_; }

private:
  void assemble();
  void factorize_reduced() const;
  Eigen::VectorXd solve_reduced(const Eigen::VectorXd& rhs, double tol,
                                const char* what) const;

  std::shared_ptr<const MetricContext> mc_;
  DiffusivityAssignment da_;
  Eigen::SparseMatrix<double> S_; // full symmetric matrix

  bool reduced_ = false;
  std::vector<int> red_index_;       // K-node -> reduced index, -1 if Dirichlet
  std::vector<int> red_to_full_;
  Eigen::VectorXd dirichlet_values_; // full length, zero off the Dirichlet set
  std::vector<char> is_dirichlet_;
  Eigen::VectorXd neumann_rhs_;      // full length
  Eigen::SparseMatrix<double> S_red_;
  Eigen::VectorXd rhs_red_;

  mutable Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  mutable bool pattern_analyzed_ = false;
  mutable bool factorized_ = false;
};

/// f(b1) = -alpha * <b1,b1> * (d0 u)(b1).
double edge_flux(const MetricContext& mc, const DiffusivityAssignment& da,
                 const Cochain& u, int kedge);

struct FluxSummary {
  double total = 0.0;
  std::array<double, 3> by_class{0.0, 0.0, 0.0};
};

/// Total |flux| over K 1-cells with exactly one node in the surface set,
/// broken down by edge class.
FluxSummary boundary_flux(const MetricContext& mc, const DiffusivityAssignment& da,
                          const Cochain& u, const std::vector<int>& surface_nodes);

/// alpha_eff = F h / ((u1 - u0) A).
double effective_diffusivity(double flux, double h, double area, double u0,
                             double u1);

} // namespace fdf
