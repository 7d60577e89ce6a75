#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <iosfwd>
#include <memory>

#include "mesh.hpp"

namespace fdf {

/// A mesh together with per-cell orientations (ordered edge-vector frame plus
/// a sign) and the induced signed boundary/coboundary incidence matrices.
///
/// Two construction paths:
///  - orient_compatibly: d-cell signs by breadth-first propagation so the two
///    cofaces of every interior (d-1)-cell induce opposite signs; boundary
///    (d-1)-cells reoriented so their unique coface induces +1.
///  - from_prescribed: incidence signs given (Forman subdivision); frame signs
///    recovered dimension-by-dimension and checked against the geometry.
class OrientedComplex {
public:
  static std::shared_ptr<const OrientedComplex> orient_compatibly(
      std::shared_ptr<const Mesh> mesh);

  /// `prescribed[p]` holds one sign per hyperface slot of each p-cell, laid
  /// out in the same order as Mesh::hyperfaces.
  static std::shared_ptr<const OrientedComplex> from_prescribed(
      std::shared_ptr<const Mesh> mesh,
      std::array<std::vector<std::int8_t>, kMaxDim + 1> prescribed);

  /// Deterministic lowest-index-vertex frames with all signs +1; no
  /// compatibility requirement (any orientation induces a chain complex).
  static std::shared_ptr<const OrientedComplex> with_default_orientation(
      std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  int dim() const { return mesh_->dim(); }

  /// Geometric relative orientation of a cell and one of its hyperfaces:
  /// sign of [outward vector ^ OR(b)] / OR(c). Throws NotHyperface.
  int relative_orientation(int p, int cell, int hyperface) const;

  /// Stored incidence sign for hyperfaces(p, cell)[slot].
  int boundary_sign(int p, int cell, int slot) const {
    return bnd_signs_[p][slot_offsets_[p][cell] + slot];
  }

  int frame_sign(int p, int i) const { return signs_[p][i]; }

  /// Frame vectors spanning the cell (columns), for p >= 1.
  Eigen::Matrix<double, 3, Eigen::Dynamic> frame(int p, int i) const;

  /// Signed boundary operator d_p : C_p -> C_{p-1} (rows index (p-1)-cells).
  const Eigen::SparseMatrix<double>& boundary_matrix(int p) const {
    return boundary_[p];
  }

  /// Coboundary d^p : C^p -> C^{p+1}; the transpose of boundary_matrix(p+1).
  Eigen::SparseMatrix<double> coboundary_matrix(int p) const {
    return boundary_[p + 1].transpose();
  }

  /// All-ones d-chain.
  Eigen::VectorXd fundamental_class() const;

  /// Betti numbers b_0..b_d over the reals, via rank-revealing SVD.
  std::vector<int> betti_numbers() const;

  /// Coordinate-list text export of the boundary matrix (one
  /// "row col sign" triple per line, preceded by a "rows cols nnz" header).
  void write_boundary_coo(int p, std::ostream& out) const;

private:
  OrientedComplex() = default;

  struct Frame {
    int base = -1;
    std::array<int, 3> dirs{-1, -1, -1}; // target vertex ids
  };

  void build_frames();
  int raw_det_sign(int p, int cell, int hyperface) const; // frame signs excluded
  void assemble_matrices();
  void check_chain_property() const;

  std::shared_ptr<const Mesh> mesh_;
  std::array<std::vector<Frame>, kMaxDim + 1> frames_;
  std::array<std::vector<std::int8_t>, kMaxDim + 1> signs_;
  std::array<std::vector<std::int8_t>, kMaxDim + 1> bnd_signs_; // per slot
  std::array<std::vector<int>, kMaxDim + 1> slot_offsets_;     // per cell
  std::array<Eigen::SparseMatrix<double>, kMaxDim + 1> boundary_;
};

} // namespace fdf
