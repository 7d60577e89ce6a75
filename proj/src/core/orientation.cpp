#include "orientation.hpp"

#include <deque>
#include <map>
#include <ostream>

namespace fdf {

namespace {
constexpr double kSignDetTol = 1e-10;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> OrientedComplex::frame(int p, int i) const {
  Eigen::Matrix<double, 3, Eigen::Dynamic> F(3, p);
  const Frame& fr = frames_[p][i];
  for (int k = 0; k < p; ++k)
    F.col(k) = mesh_->vertex(fr.dirs[k]) - mesh_->vertex(fr.base);
  return F;
}

void OrientedComplex::build_frames() {
  const Mesh& m = *mesh_;
  for (int p = 0; p <= m.dim(); ++p) {
    frames_[p].resize(m.count(p));
    signs_[p].assign(m.count(p), 1);
  }
  for (int i = 0; i < m.count(0); ++i) frames_[0][i].base = i;
  for (int p = 1; p <= m.dim(); ++p) {
    for (int i = 0; i < m.count(p); ++i) {
      Frame& fr = frames_[p][i];
      if (p == 1) {
        auto nodes = m.hyperfaces(1, i);
        fr.base = std::min(nodes[0], nodes[1]);
        fr.dirs[0] = std::max(nodes[0], nodes[1]);
        continue;
      }
      auto verts = m.faces(p, i, 0);
      fr.base = verts[0]; // sorted, lowest index first
      // Greedy spanning subset of the edge vectors at the base vertex,
      // in edge-index order.
      Eigen::Matrix<double, 3, Eigen::Dynamic> acc(3, p);
      int rank = 0;
      for (int e : m.faces(p, i, 1)) {
        auto nodes = m.hyperfaces(1, e);
        int other;
        if (nodes[0] == fr.base) other = nodes[1];
        else if (nodes[1] == fr.base) other = nodes[0];
        else continue;
        Eigen::Vector3d v = m.vertex(other) - m.vertex(fr.base);
        Eigen::Vector3d res = v;
        for (int k = 0; k < rank; ++k)
          res -= acc.col(k).dot(res) / acc.col(k).squaredNorm() * acc.col(k);
        if (res.norm() > 1e-8 * v.norm()) {
          acc.col(rank) = v;
          fr.dirs[rank] = other;
          ++rank;
          if (rank == p) break;
        }
      }
      if (rank != p)
        fail(ErrorKind::DegenerateCell,
             "cell (" + std::to_string(p) + "," + std::to_string(i) +
                 ") has no spanning edge frame at its base vertex");
    }
  }
}

int OrientedComplex::raw_det_sign(int p, int cell, int hyperface) const {
  const Mesh& m = *mesh_;
  Eigen::Matrix<double, 3, Eigen::Dynamic> Fc = frame(p, cell);
  for (int k = 0; k < p; ++k) Fc.col(k).normalize();

  Eigen::Matrix<double, 3, Eigen::Dynamic> B(3, p);
  Eigen::Vector3d n = m.centroid(p - 1, hyperface) - m.centroid(p, cell);
  const double nn = n.norm();
  if (nn < 1e-300)
    fail(ErrorKind::NumericallyDegenerate, "coincident centroids");
  B.col(0) = n / nn;
  if (p >= 2) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> Fb = frame(p - 1, hyperface);
    for (int k = 0; k < p - 1; ++k) B.col(k + 1) = Fb.col(k).normalized();
  }

  // Coordinates of B in the column space of Fc; the least-squares solve
  // also projects the outward vector into the cell's affine hull.
  Eigen::MatrixXd X =
      (Fc.transpose() * Fc).ldlt().solve(Fc.transpose() * B);
  const double det = X.determinant();
  if (std::abs(det) < kSignDetTol)
    fail(ErrorKind::NumericallyDegenerate,
         "relative orientation determinant below tolerance for cells (" +
             std::to_string(p) + "," + std::to_string(cell) + ") / (" +
             std::to_string(p - 1) + "," + std::to_string(hyperface) + ")");
  return det > 0 ? 1 : -1;
}

int OrientedComplex::relative_orientation(int p, int cell, int hyperface) const {
  const Mesh& m = *mesh_;
  auto hfs = m.hyperfaces(p, cell);
  bool found = false;
  for (int f : hfs)
    if (f == hyperface) { found = true; break; }
  if (!found)
    fail(ErrorKind::NotHyperface, "cell is not a hyperface of the given cell");
  return signs_[p][cell] * signs_[p - 1][hyperface] *
         raw_det_sign(p, cell, hyperface);
}

void OrientedComplex::assemble_matrices() {
  const Mesh& m = *mesh_;
  for (int p = 1; p <= m.dim(); ++p) {
    slot_offsets_[p].assign(m.count(p) + 1, 0);
    for (int i = 0; i < m.count(p); ++i)
      slot_offsets_[p][i + 1] =
          slot_offsets_[p][i] + static_cast<int>(m.hyperfaces(p, i).size());
    bnd_signs_[p].assign(slot_offsets_[p][m.count(p)], 0);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(bnd_signs_[p].size());
    for (int i = 0; i < m.count(p); ++i) {
      auto hfs = m.hyperfaces(p, i);
      for (int s = 0; s < static_cast<int>(hfs.size()); ++s) {
        const int sign = signs_[p][i] * signs_[p - 1][hfs[s]] *
                         raw_det_sign(p, i, hfs[s]);
        bnd_signs_[p][slot_offsets_[p][i] + s] = static_cast<std::int8_t>(sign);
        trips.emplace_back(hfs[s], i, static_cast<double>(sign));
      }
    }
    boundary_[p].resize(m.count(p - 1), m.count(p));
    boundary_[p].setFromTriplets(trips.begin(), trips.end());
  }
  check_chain_property();
}

void OrientedComplex::check_chain_property() const {
  const Mesh& m = *mesh_;
  for (int p = 2; p <= m.dim(); ++p) {
    std::map<int, long> acc;
    for (int i = 0; i < m.count(p); ++i) {
      acc.clear();
      auto hfs = m.hyperfaces(p, i);
      for (int s = 0; s < static_cast<int>(hfs.size()); ++s) {
        const int s1 = boundary_sign(p, i, s);
        auto sub = m.hyperfaces(p - 1, hfs[s]);
        for (int t = 0; t < static_cast<int>(sub.size()); ++t)
          acc[sub[t]] += s1 * boundary_sign(p - 1, hfs[s], t);
      }
      for (auto [a, v] : acc) {
        if (v != 0)
          fail(ErrorKind::InvalidGeometry,
               "boundary of boundary is nonzero at cell (" + std::to_string(p) +
                   "," + std::to_string(i) + ")");
      }
    }
  }
}

std::shared_ptr<const OrientedComplex> OrientedComplex::orient_compatibly(
    std::shared_ptr<const Mesh> mesh) {
  auto rep = mesh->validate();
  if (!rep.is_manifold_like)
    fail(ErrorKind::InvalidArgument,
         "orient_compatibly requires a manifold-like mesh");

  auto oc = std::shared_ptr<OrientedComplex>(new OrientedComplex());
  oc->mesh_ = std::move(mesh);
  oc->build_frames();
  const Mesh& m = *oc->mesh_;
  const int d = m.dim();
  if (d == 0) {
    oc->assemble_matrices();
    return oc;
  }

  // BFS over d-cells across interior (d-1)-cells.
  std::vector<char> visited(m.count(d), 0);
  for (int root = 0; root < m.count(d); ++root) {
    if (visited[root]) continue;
    if (d == m.embedding_dim()) {
      // Right-handed root: frame determinant positive in the ambient space.
      Eigen::Matrix<double, 3, Eigen::Dynamic> F = oc->frame(d, root);
      double det = 0;
      if (d == 3) det = F.determinant();
      else if (d == 2) det = F(0, 0) * F(1, 1) - F(0, 1) * F(1, 0);
      else det = F(0, 0);
      if (det < 0) oc->signs_[d][root] = -1;
    }
    visited[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (int b : m.faces(d, c, d - 1)) {
        auto up = m.cofaces(d - 1, b, d);
        if (up.size() != 2) continue;
        const int c2 = up[0] == c ? up[1] : up[0];
        const int e1 = oc->signs_[d][c] * oc->signs_[d - 1][b] *
                       oc->raw_det_sign(d, c, b);
        const int e2 = oc->signs_[d][c2] * oc->signs_[d - 1][b] *
                       oc->raw_det_sign(d, c2, b);
        if (!visited[c2]) {
          if (e1 == e2) oc->signs_[d][c2] = -oc->signs_[d][c2];
          visited[c2] = 1;
          queue.push_back(c2);
        } else if (e1 == e2) {
          fail(ErrorKind::NonOrientable,
               "mesh admits no compatible orientation (conflict at (" +
                   std::to_string(d - 1) + "," + std::to_string(b) + "))");
        }
      }
    }
  }

  // Boundary (d-1)-cells: unique coface induces +1.
  for (int b = 0; b < m.count(d - 1); ++b) {
    auto up = m.cofaces(d - 1, b, d);
    if (up.size() != 1) continue;
    const int eps = oc->signs_[d][up[0]] * oc->signs_[d - 1][b] *
                    oc->raw_det_sign(d, up[0], b);
    if (eps < 0) oc->signs_[d - 1][b] = -1;
  }

  oc->assemble_matrices();
  return oc;
}

std::shared_ptr<const OrientedComplex> OrientedComplex::with_default_orientation(
    std::shared_ptr<const Mesh> mesh) {
  auto oc = std::shared_ptr<OrientedComplex>(new OrientedComplex());
  oc->mesh_ = std::move(mesh);
  oc->build_frames();
  oc->assemble_matrices();
  return oc;
}

std::shared_ptr<const OrientedComplex> OrientedComplex::from_prescribed(
    std::shared_ptr<const Mesh> mesh,
    std::array<std::vector<std::int8_t>, kMaxDim + 1> prescribed) {
  auto oc = std::shared_ptr<OrientedComplex>(new OrientedComplex());
  oc->mesh_ = std::move(mesh);
  oc->build_frames();
  const Mesh& m = *oc->mesh_;

  // Recover frame signs dimension by dimension: 0-cells positive, then each
  // cell's sign is fixed by its first hyperface slot; remaining slots must
  // agree, otherwise the prescribed incidence is not realizable.
  for (int p = 1; p <= m.dim(); ++p) {
    std::vector<int> offsets(m.count(p) + 1, 0);
    for (int i = 0; i < m.count(p); ++i)
      offsets[i + 1] = offsets[i] + static_cast<int>(m.hyperfaces(p, i).size());
    if (static_cast<int>(prescribed[p].size()) != offsets[m.count(p)])
      fail(ErrorKind::InvalidArgument, "prescribed sign table has wrong size");
    for (int i = 0; i < m.count(p); ++i) {
      auto hfs = m.hyperfaces(p, i);
      for (int s = 0; s < static_cast<int>(hfs.size()); ++s) {
        const int want = prescribed[p][offsets[i] + s];
        const int got = oc->signs_[p - 1][hfs[s]] * oc->raw_det_sign(p, i, hfs[s]);
        if (s == 0) {
          oc->signs_[p][i] = static_cast<std::int8_t>(want * got);
        } else if (oc->signs_[p][i] * got != want) {
          fail(ErrorKind::InvalidGeometry,
               "prescribed orientation not realizable at cell (" +
                   std::to_string(p) + "," + std::to_string(i) + ")");
        }
      }
    }
  }

  oc->assemble_matrices();
  return oc;
}

Eigen::VectorXd OrientedComplex::fundamental_class() const {
  return Eigen::VectorXd::Ones(mesh_->count(mesh_->dim()));
}

std::vector<int> OrientedComplex::betti_numbers() const {
  const Mesh& m = *mesh_;
  const int d = m.dim();
  std::vector<int> ranks(d + 2, 0); // rank of boundary_[p], p = 1..d
  for (int p = 1; p <= d; ++p) {
    Eigen::MatrixXd dense = Eigen::MatrixXd(boundary_[p]);
    if (dense.size() == 0) continue;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * (sv.size() ? sv(0) : 0.0);
    int r = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > tol) ++r;
    ranks[p] = r;
  }
  std::vector<int> betti(d + 1, 0);
  for (int p = 0; p <= d; ++p) {
    const int ker = m.count(p) - ranks[p]; // rank of boundary_[0] is 0
    betti[p] = ker - ranks[p + 1];
  }
  return betti;
}

void OrientedComplex::write_boundary_coo(int p, std::ostream& out) const {
  const auto& B = boundary_[p];
  out << B.rows() << " " << B.cols() << " " << B.nonZeros() << "\n";
  for (int k = 0; k < B.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(B, k); it; ++it) {
      out << it.row() << " " << it.col() << " " << static_cast<int>(it.value())
          << "\n";
    }
  }
}

} // namespace fdf
