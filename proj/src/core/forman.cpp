#include "forman.hpp"

namespace fdf {

namespace {

/// Stored incidence sign of (cell, hyperface) in an oriented complex.
int stored_sign(const OrientedComplex& oc, int p, int cell, int hyperface) {
  auto hfs = oc.mesh().hyperfaces(p, cell);
  for (int s = 0; s < static_cast<int>(hfs.size()); ++s)
    if (hfs[s] == hyperface) return oc.boundary_sign(p, cell, s);
  fail(ErrorKind::NotHyperface, "stored_sign: not a hyperface");
}

} // namespace

PairIndex::PairIndex(const Mesh& mesh) : mesh_(&mesh) {
  const int d = mesh.dim();
  {
    int off = 0;
    for (int p = 0; p <= d; ++p) {
      cell_offsets_0_[p] = off;
      off += mesh.count(p);
    }
  }
  for (int k = 0; k <= d; ++k) {
    auto& refs = refs_[k];
    for (int q = k; q <= d; ++q) {
      const int r = q - k;
      block_start_[k][q].assign(mesh.count(q) + 1, 0);
      for (int iq = 0; iq < mesh.count(q); ++iq) {
        block_start_[k][q][iq] = static_cast<int>(refs.size());
        if (k == 0) {
          refs.push_back({q, iq, q, iq});
        } else {
          for (int ir : mesh.faces(q, iq, r)) refs.push_back({q, iq, r, ir});
        }
      }
      block_start_[k][q][mesh.count(q)] = static_cast<int>(refs.size());
    }
  }
}

int PairIndex::index_of(int q, int iq, int r, int ir) const {
  const int k = q - r;
  if (k < 0 || q > mesh_->dim()) return -1;
  if (k == 0) return (iq == ir) ? block_start_[0][q][iq] : -1;
  const int pos = [&] {
    auto row = mesh_->faces(q, iq, r);
    auto it = std::lower_bound(row.begin(), row.end(), ir);
    if (it == row.end() || *it != ir) return -1;
    return static_cast<int>(it - row.begin());
  }();
  if (pos < 0) return -1;
  return block_start_[k][q][iq] + pos;
}

std::shared_ptr<const FormanComplex> FormanComplex::build(
    std::shared_ptr<const OrientedComplex> base) {
  const Mesh& m = base->mesh();
  auto rep = m.validate();
  if (!rep.is_manifold_like)
    fail(ErrorKind::InvalidArgument,
         "Forman subdivision requires a manifold-like mesh");
  if (!rep.has_cubical_corners)
    fail(ErrorKind::NonCubicalCorners,
         "Forman subdivision requires cubical corners on all top cells");

  auto fc = std::shared_ptr<FormanComplex>(new FormanComplex());
  fc->base_ = base;
  fc->pairs_ = std::make_shared<PairIndex>(m);
  const PairIndex& pi = *fc->pairs_;
  const int d = m.dim();

  // K-vertices at the centroids of the M-cells, in gap-0 pair order.
  std::vector<Eigen::Vector3d> kverts;
  kverts.reserve(pi.count(0));
  for (int ik = 0; ik < pi.count(0); ++ik) {
    const PairRef& pr = pi.pair_of(0, ik);
    kverts.push_back(m.centroid(pr.q, pr.iq));
  }

  // Hyperfaces of the K-cell (c_q, b_r):
  //   { (c', b_r) : c' hyperface of c_q, c' >= b_r }  with sign eps(c_q, c')
  //   { (c_q, b') : b' coface of b_r of dim r+1, b' <= c_q }
  //                                         with sign (-1)^k eps(b', b_r)
  Mesh::Tables tables;
  std::array<std::vector<std::int8_t>, kMaxDim + 1> signs;
  for (int k = 1; k <= d; ++k) {
    const int sign_b = (k % 2 == 0) ? 1 : -1;
    tables[k].resize(pi.count(k));
    for (int ik = 0; ik < pi.count(k); ++ik) {
      const PairRef& pr = pi.pair_of(k, ik);
      std::vector<int>& row = tables[k][ik];
      auto hfs = m.hyperfaces(pr.q, pr.iq);
      for (int s = 0; s < static_cast<int>(hfs.size()); ++s) {
        const int idx = pi.index_of(pr.q - 1, hfs[s], pr.r, pr.ir);
        if (idx < 0) continue; // b_r not a face of this hyperface
        row.push_back(idx);
        signs[k].push_back(
            static_cast<std::int8_t>(base->boundary_sign(pr.q, pr.iq, s)));
      }
      if (pr.r + 1 == pr.q) {
        // the only admissible coface of b_r inside c_q is c_q itself
        const int idx = pi.index_of(pr.q, pr.iq, pr.q, pr.iq);
        row.push_back(idx);
        signs[k].push_back(static_cast<std::int8_t>(
            sign_b * stored_sign(*base, pr.q, pr.iq, pr.ir)));
      } else {
        for (int b2 : m.cofaces(pr.r, pr.ir, pr.r + 1)) {
          if (!sorted_contains(m.faces(pr.q, pr.iq, pr.r + 1), b2)) continue;
          const int idx = pi.index_of(pr.q, pr.iq, pr.r + 1, b2);
          row.push_back(idx);
          signs[k].push_back(static_cast<std::int8_t>(
              sign_b * stored_sign(*base, pr.r + 1, b2, pr.ir)));
        }
      }
    }
  }

  auto kmesh = Mesh::build(m.embedding_dim(), std::move(kverts), tables);
  fc->k_ = OrientedComplex::from_prescribed(std::move(kmesh), std::move(signs));
  return fc;
}

Form exterior_derivative(const OrientedComplex& oc, const PairIndex& pairs,
                         const Form& omega) {
  const Mesh& m = oc.mesh();
  const int p = omega.degree;
  if (p >= m.dim())
    fail(ErrorKind::DegreeOverflow,
         "exterior derivative of a top-degree form");
  Form out;
  out.degree = p + 1;
  out.coeffs = Eigen::VectorXd::Zero(pairs.count(p + 1));
  const double face_factor = (p % 2 == 0) ? -1.0 : 1.0; // -(-1)^p

  for (int ik = 0; ik < pairs.count(p); ++ik) {
    const double w = omega.coeffs[ik];
    if (w == 0.0) continue;
    const PairRef& pr = pairs.pair_of(p, ik);
    // coface family: (a_{q+1} -> b) with sign eps(a, c_q)
    if (pr.q < m.dim()) {
      for (int a : m.cofaces(pr.q, pr.iq, pr.q + 1)) {
        const int idx = pairs.index_of(pr.q + 1, a, pr.r, pr.ir);
        out.coeffs[idx] += w * stored_sign(oc, pr.q + 1, a, pr.iq);
      }
    }
    // face family: (c_q -> a_{r-1}) with sign -(-1)^p eps(b_r, a)
    if (pr.r >= 1) {
      auto hfs = m.hyperfaces(pr.r, pr.ir);
      for (int s = 0; s < static_cast<int>(hfs.size()); ++s) {
        const int idx = pairs.index_of(pr.q, pr.iq, pr.r - 1, hfs[s]);
        out.coeffs[idx] += w * face_factor * oc.boundary_sign(pr.r, pr.ir, s);
      }
    }
  }
  return out;
}

Cochain forman_iso(const FormanComplex& fc, const Form& omega) {
  if (omega.coeffs.size() != fc.pairs().count(omega.degree))
    fail(ErrorKind::DimensionMismatch, "form coefficient vector has wrong size");
  return Cochain{omega.degree, omega.coeffs};
}

Form forman_iso_inv(const FormanComplex& fc, const Cochain& sigma) {
  if (sigma.values.size() != fc.pairs().count(sigma.degree))
    fail(ErrorKind::DimensionMismatch, "cochain vector has wrong size");
  return Form{sigma.degree, sigma.values};
}

Cochain transported_unit(const FormanComplex& fc) {
  return Cochain{0, Eigen::VectorXd::Ones(fc.pairs().count(0))};
}

} // namespace fdf
