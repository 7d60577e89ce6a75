#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "incidence.hpp"

namespace fdf {

constexpr int kMaxDim = 3;

struct CellId {
  int dim = 0;
  int index = 0;

  friend bool operator==(const CellId&, const CellId&) = default;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

struct ValidationFailure {
  std::string rule;
  std::vector<CellId> cells;
};

struct ValidationReport {
  bool is_manifold_like = false;
  std::array<bool, kMaxDim + 1> is_p_regular{true, true, true, true};
  bool has_cubical_corners = false;
  std::vector<CellId> boundary_cell_ids; // (d-1)-cells with one d-superface
  std::vector<ValidationFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Immutable polytopal cell complex with full face poset and cached geometry.
///
/// Cells of dimension p >= 1 are defined by their (p-1)-dimensional
/// hyperface ids; 0-cells are the vertices. The constructor computes the
/// transitive closure of the incidence relation (faces and cofaces at every
/// dimension gap), checks face closure and the diamond property, chains
/// 2-cell edges into vertex loops, and caches measures and centroids.
class Mesh {
public:
  using Tables = std::array<std::vector<std::vector<int>>, kMaxDim + 1>;

  static std::shared_ptr<const Mesh> build(int embedding_dim,
                                           std::vector<Eigen::Vector3d> vertices,
                                           const Tables& cells);

  int dim() const { return dim_; }
  int embedding_dim() const { return embedding_dim_; }
  int count(int p) const { return counts_[p]; }
  int total_cells() const;

  const Eigen::Vector3d& vertex(int v) const { return vertices_[v]; }
  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }

  /// Hyperfaces ((p-1)-faces) of cell (p, i), in input order; p >= 1.
  std::span<const int> hyperfaces(int p, int i) const;

  /// Sorted r-faces of cell (p, i); r <= p (r == p gives {i}).
  std::span<const int> faces(int p, int i, int r) const;

  /// Sorted q-cofaces of cell (p, i); q >= p.
  std::span<const int> cofaces(int p, int i, int q) const;

  /// Vertex ids of a 2-cell in cyclic boundary order.
  std::span<const int> face_loop(int i) const { return loops_[i]; }

  double measure(int p, int i) const { return measures_[p][i]; }
  double measure(CellId c) const { return measure(c.dim, c.index); }
  const Eigen::Vector3d& centroid(int p, int i) const { return centroids_[p][i]; }
  const Eigen::Vector3d& centroid(CellId c) const { return centroid(c.dim, c.index); }

  double bbox_diagonal() const { return bbox_diagonal_; }

  /// Fraction of the unit (p-1)-sphere subtended by the corner cone of cell
  /// (p, i) at one of its nodes. Always 1/2 for edges.
  double angle_measure(int p, int i, int node) const;

  /// kappa(a0) = 1 / sum of angle fractions of the incident d-cells.
  double node_curvature(int node) const;

  ValidationReport validate() const;

  /// Closed mesh formed by the boundary (d-1)-cells and their faces.
  /// `vertex_map` (optional) receives submesh-vertex -> parent-vertex ids.
  std::shared_ptr<const Mesh> boundary_submesh(
      std::vector<int>* vertex_map = nullptr) const;

  /// Boundary (d-1)-cell indices (exactly one d-superface).
  std::vector<int> boundary_hyperfaces() const;

private:
  Mesh() = default;

  void build_poset(const Tables& cells);
  void build_loops();
  void build_geometry();
  double cell_measure(int p, int i) const;
  double corner_solid_angle(int cell3, int node) const;
  double corner_planar_angle(int cell2, int node) const;

  int embedding_dim_ = 3;
  int dim_ = 0;
  std::array<int, kMaxDim + 1> counts_{0, 0, 0, 0};
  std::vector<Eigen::Vector3d> vertices_;

  // hyperfaces_[p]: input-order hyperface ids of p-cells (p >= 1)
  std::array<IncidenceList, kMaxDim + 1> hyperfaces_;
  // faces_[p][r]: sorted r-faces of p-cells, r < p
  std::array<std::array<IncidenceList, kMaxDim + 1>, kMaxDim + 1> faces_;
  // cofaces_[p][q]: sorted q-cofaces of p-cells, q > p
  std::array<std::array<IncidenceList, kMaxDim + 1>, kMaxDim + 1> cofaces_;
  IncidenceList loops_; // per 2-cell: vertices in cyclic order

  std::array<std::vector<double>, kMaxDim + 1> measures_;
  std::array<std::vector<Eigen::Vector3d>, kMaxDim + 1> centroids_;
  double bbox_diagonal_ = 0.0;
};

} // namespace fdf
