#include "algebra.hpp"

#include <map>

namespace fdf {

namespace {

constexpr double kSignDetTol = 1e-10;

int common_vertex_count(const Mesh& m, int p, int a, int q, int b) {
  // spans of sorted vertex id lists; 0-cells are their own vertex set
  const int av[1] = {a}, bv[1] = {b};
  std::span<const int> va = p == 0 ? std::span<const int>(av, 1) : m.faces(p, a, 0);
  std::span<const int> vb = q == 0 ? std::span<const int>(bv, 1) : m.faces(q, b, 0);
  int count = 0;
  auto ia = va.begin();
  auto ib = vb.begin();
  while (ia != va.end() && ib != vb.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++count; ++ia; ++ib; }
  }
  return count;
}

/// sign of OR(a_p) ^ OR(b_q) / OR(c_{p+q}) via a frame determinant.
int cup_sign(const OrientedComplex& K, int p, int a, int q, int b, int c) {
  const int n = p + q;
  if (n == 0) return K.frame_sign(0, a);
  Eigen::Matrix<double, 3, Eigen::Dynamic> Fc = K.frame(n, c);
  for (int k = 0; k < n; ++k) Fc.col(k).normalize();
  Eigen::Matrix<double, 3, Eigen::Dynamic> B(3, n);
  if (p > 0) {
    auto Fa = K.frame(p, a);
    for (int k = 0; k < p; ++k) B.col(k) = Fa.col(k).normalized();
  }
  if (q > 0) {
    auto Fb = K.frame(q, b);
    for (int k = 0; k < q; ++k) B.col(p + k) = Fb.col(k).normalized();
  }
  Eigen::MatrixXd X = (Fc.transpose() * Fc).ldlt().solve(Fc.transpose() * B);
  const double det = X.determinant();
  if (std::abs(det) < kSignDetTol)
    fail(ErrorKind::NumericallyDegenerate,
         "cup product sign determinant below tolerance");
  const int s = det > 0 ? 1 : -1;
  return s * K.frame_sign(p, a) * K.frame_sign(q, b) * K.frame_sign(n, c);
}

} // namespace

CupTable::CupTable(std::shared_ptr<const FormanComplex> fc) : fc_(std::move(fc)) {
  const OrientedComplex& K = fc_->K();
  const Mesh& m = K.mesh();
  const int d = m.dim();

  std::array<std::array<std::map<std::pair<int, int>, int>, kMaxDim + 1>,
             kMaxDim + 1>
      seen;

  for (int n = 0; n <= d; ++n) {
    const double scale = 1.0 / static_cast<double>(1 << n);
    for (int c = 0; c < m.count(n); ++c) {
      for (int p = 0; p <= n; ++p) {
        const int q = n - p;
        const int cv[1] = {c};
        std::span<const int> as =
            p == n ? std::span<const int>(cv, 1) : m.faces(n, c, p);
        std::span<const int> bs =
            q == n ? std::span<const int>(cv, 1) : m.faces(n, c, q);
        for (int a : as) {
          for (int b : bs) {
            if (common_vertex_count(m, p, a, q, b) != 1) continue;
            auto [it, fresh] = seen[p][q].try_emplace({a, b},
                                                      static_cast<int>(entries_[p][q].size()));
            if (!fresh)
              fail(ErrorKind::InvalidGeometry,
                   "cup product: cells share more than one common superface");
            const int sign = cup_sign(K, p, a, q, b, c);
            entries_[p][q].push_back({a, b, c, sign * scale});
          }
        }
      }
    }
  }
}

Cochain CupTable::cup(const Cochain& sigma, const Cochain& tau) const {
  const int p = sigma.degree, q = tau.degree;
  if (p + q > dim())
    fail(ErrorKind::DegreeOverflow, "cup product degree exceeds dimension");
  Cochain out{p + q,
              Eigen::VectorXd::Zero(fc_->K().mesh().count(p + q))};
  for (const Entry& e : entries_[p][q])
    out.values[e.c] += e.coef * sigma.values[e.a] * tau.values[e.b];
  return out;
}

double CupTable::cup_on_fundamental(const Cochain& sigma, const Cochain& tau) const {
  if (sigma.degree + tau.degree != dim())
    fail(ErrorKind::DegreeMismatch,
         "pairing with the fundamental class needs total degree d");
  double sum = 0.0;
  for (const Entry& e : entries_[sigma.degree][tau.degree])
    sum += e.coef * sigma.values[e.a] * tau.values[e.b];
  return sum;
}

Form wedge(const FormanComplex& fc, const CupTable& table, const Form& omega,
           const Form& eta) {
  Cochain prod = table.cup(forman_iso(fc, omega), forman_iso(fc, eta));
  return forman_iso_inv(fc, prod);
}

double evaluate(const Cochain& sigma, const Chain& rho) {
  if (sigma.degree != rho.degree)
    fail(ErrorKind::DegreeMismatch, "cochain/chain degree mismatch");
  if (sigma.values.size() != rho.values.size())
    fail(ErrorKind::DimensionMismatch, "cochain/chain length mismatch");
  return sigma.values.dot(rho.values);
}

} // namespace fdf
