#pragma once

#include <memory>

#include "cochain.hpp"
#include "orientation.hpp"

namespace fdf {

/// Incident cell pair (b_r, c_q) with b_r a face of c_q (or equal).
struct PairRef {
  int q = 0;  // dimension of the outer cell
  int iq = 0; // outer cell index
  int r = 0;  // dimension of the inner cell
  int ir = 0; // inner cell index
};

/// Enumerates all incident pairs of a mesh, grouped by dimension gap k = q-r.
/// Pairs with gap k are ordered by (q, iq, ir); gap-0 pairs enumerate the
/// cells themselves, dimension by dimension.
class PairIndex {
public:
  explicit PairIndex(const Mesh& mesh);

  int count(int k) const { return static_cast<int>(refs_[k].size()); }
  const PairRef& pair_of(int k, int ik) const { return refs_[k][ik]; }

  /// Index of the pair (b_r <= c_q) within gap q-r; -1 if not incident.
  int index_of(int q, int iq, int r, int ir) const;

  /// Index of the gap-0 pair of a cell (the K-vertex of that cell).
  int vertex_of(int p, int i) const { return cell_offsets_0_[p] + i; }

private:
  const Mesh* mesh_;
  std::array<std::vector<PairRef>, kMaxDim + 1> refs_;
  // start of the pair block of cell (q, iq) at gap k, per k and q
  std::array<std::array<std::vector<int>, kMaxDim + 1>, kMaxDim + 1> block_start_;
  std::array<int, kMaxDim + 1> cell_offsets_0_{};
};

/// Discrete differential form: degree-p locality-respecting map on chains,
/// stored as coefficients over the basis pairs (c_q -> b_{q-p}).
struct Form {
  int degree = 0;
  Eigen::VectorXd coeffs; // indexed per PairIndex gap ordering
};

/// Forman subdivision K of a mesh M, with the pair correspondence between
/// K-cells and incident M-cell pairs. K-vertices sit at the centroids of the
/// M-cells; K's incidence signs are prescribed by the exterior derivative and
/// checked against K's own geometry.
class FormanComplex {
public:
  static std::shared_ptr<const FormanComplex> build(
      std::shared_ptr<const OrientedComplex> base);

  const OrientedComplex& base() const { return *base_; }
  const OrientedComplex& K() const { return *k_; }
  std::shared_ptr<const OrientedComplex> K_ptr() const { return k_; }
  const PairIndex& pairs() const { return *pairs_; }
  int dim() const { return base_->dim(); }

  /// M-pair of a K-cell and back (the Forman correspondence on cells).
  const PairRef& pair_of_kcell(int k, int ik) const { return pairs_->pair_of(k, ik); }
  int kcell_of_pair(int q, int iq, int r, int ir) const {
    return pairs_->index_of(q, iq, r, ir);
  }

private:
  FormanComplex() = default;

  std::shared_ptr<const OrientedComplex> base_;
  std::shared_ptr<const PairIndex> pairs_;
  std::shared_ptr<const OrientedComplex> k_;
};

/// Exterior derivative D(omega) = omega o d - (-1)^p d o omega, expanded over
/// basis pairs. Throws DegreeOverflow for degree == dim.
Form exterior_derivative(const OrientedComplex& oc, const PairIndex& pairs,
                         const Form& omega);

/// Coefficient-preserving relabeling between forms on M and cochains on K.
Cochain forman_iso(const FormanComplex& fc, const Form& omega);
Form forman_iso_inv(const FormanComplex& fc, const Cochain& sigma);

/// Transported identity 0-form (all-ones 0-cochain on K).
Cochain transported_unit(const FormanComplex& fc);

} // namespace fdf
