#include "metric.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace fdf {

std::shared_ptr<const MetricContext> MetricContext::build(
    std::shared_ptr<const FormanComplex> fc, CurvatureMode mode) {
  auto mc = std::shared_ptr<MetricContext>(new MetricContext());
  mc->fc_ = std::move(fc);
  mc->mode_ = mode;
  const Mesh& km = mc->fc_->K().mesh();
  const int d = km.dim();

  mc->vol_.degree = d;
  mc->vol_.values.resize(km.count(d));
  for (int i = 0; i < km.count(d); ++i) mc->vol_.values[i] = km.measure(d, i);

  mc->kappa_ = Eigen::VectorXd::Ones(km.count(0));
  if (mode == CurvatureMode::Curvature) {
    const bool closed = km.boundary_hyperfaces().empty();
    // Angle-defect curvature needs the mesh to fill a region of its own
    // dimension; on closed meshes embedded in a higher dimension the
    // trivial weights are kept.
    if (!(closed && km.embedding_dim() > d)) {
      for (int v = 0; v < km.count(0); ++v)
        mc->kappa_[v] = km.node_curvature(v);
    }
  }

  // Total d-cell measure around each K-node.
  Eigen::VectorXd around = Eigen::VectorXd::Zero(km.count(0));
  for (int i = 0; i < km.count(d); ++i) {
    for (int v : km.faces(d, i, 0)) around[v] += km.measure(d, i);
  }

  for (int p = 0; p <= d; ++p) {
    const double scale = 1.0 / static_cast<double>(1 << (p + d));
    Eigen::VectorXd& w = mc->weights_[p];
    w.resize(km.count(p));
    for (int i = 0; i < km.count(p); ++i) {
      double sum = 0.0;
      if (p == 0) {
        sum = mc->kappa_[i] * around[i];
      } else {
        for (int v : km.faces(p, i, 0)) sum += mc->kappa_[v] * around[v];
      }
      const double mu = km.measure(p, i);
      w[i] = scale * sum / (mu * mu);
      if (!(w[i] > 0.0))
        fail(ErrorKind::InvalidGeometry, "nonpositive inner-product weight");
    }
  }
  return mc;
}

double MetricContext::inner_product(const Cochain& a, const Cochain& b) const {
  if (a.degree != b.degree)
    fail(ErrorKind::DegreeMismatch, "inner product of unequal degrees");
  return a.values.cwiseProduct(b.values).dot(weights_[a.degree]);
}

double MetricContext::riemann_integral(const Cochain& f) const {
  if (f.degree != 0)
    fail(ErrorKind::DegreeMismatch, "Riemann integral needs a 0-cochain");
  const Mesh& km = fc_->K().mesh();
  const int d = km.dim();
  const double scale = 1.0 / static_cast<double>(1 << d);
  double total = 0.0;
  for (int i = 0; i < km.count(d); ++i) {
    double s = 0.0;
    for (int v : km.faces(d, i, 0)) s += f.values[v];
    total += scale * s * km.measure(d, i);
  }
  return total;
}

Cochain MetricContext::adjoint_coboundary(const Cochain& tau) const {
  const int p = tau.degree;
  if (p < 1 || p > dim())
    fail(ErrorKind::DegreeMismatch, "adjoint coboundary degree out of range");
  const auto& bnd = fc_->K().boundary_matrix(p); // C_p -> C_(p-1)
  Eigen::VectorXd scaled = tau.values.cwiseProduct(weights_[p]);
  Eigen::VectorXd out = bnd * scaled;
  out = out.cwiseQuotient(weights_[p - 1]);
  return Cochain{p - 1, std::move(out)};
}

Eigen::SparseMatrix<double> MetricContext::laplacian(int p) const {
  const int d = dim();
  const Mesh& km = fc_->K().mesh();
  const int n = km.count(p);
  Eigen::SparseMatrix<double> L(n, n);
  if (p < d) {
    // W_p^-1 (d^p)^T W_(p+1) d^p
    const Eigen::SparseMatrix<double> cb = fc_->K().coboundary_matrix(p);
    Eigen::SparseMatrix<double> wcb = weights_[p + 1].asDiagonal() * cb;
    Eigen::SparseMatrix<double> up = Eigen::SparseMatrix<double>(cb.transpose()) * wcb;
    L = weights_[p].cwiseInverse().asDiagonal() * up;
  }
  if (p > 0) {
    // d^(p-1) W_(p-1)^-1 (d^(p-1))^T W_p
    const Eigen::SparseMatrix<double> cb = fc_->K().coboundary_matrix(p - 1);
    Eigen::SparseMatrix<double> cbt = cb.transpose();
    Eigen::SparseMatrix<double> a = weights_[p - 1].cwiseInverse().asDiagonal() * cbt;
    Eigen::SparseMatrix<double> b = cb * a;
    Eigen::SparseMatrix<double> down = b * weights_[p].asDiagonal();
    L = L + down;
  }
  return L;
}

Cochain MetricContext::laplacian_0(const Cochain& c) const {
  if (c.degree != 0) fail(ErrorKind::DegreeMismatch, "laplacian_0 needs degree 0");
  Cochain d0{1, fc_->K().coboundary_matrix(0) * c.values};
  return adjoint_coboundary(d0);
}

Cochain MetricContext::hodge_star(const CupTable& table, const Cochain& sigma) const {
  const int d = dim();
  const int p = sigma.degree;
  const int q = d - p;
  Cochain out{q, Eigen::VectorXd::Zero(fc_->K().mesh().count(q))};
  for (const CupTable::Entry& e : table.entries(q, p))
    out.values[e.a] += e.coef * sigma.values[e.b];
  out.values = out.values.cwiseQuotient(weights_[q]);
  return out;
}

HodgeReport MetricContext::hodge_report(std::uint64_t probe_seed) const {
  const int d = dim();
  const Mesh& km = fc_->K().mesh();
  HodgeReport report;
  const std::vector<int> betti = fc_->K().betti_numbers();
  std::mt19937_64 rng(probe_seed);
  std::normal_distribution<double> gauss;

  for (int p = 0; p <= d; ++p) {
    HodgeDegreeReport rep;
    rep.degree = p;
    rep.betti = betti[p];
    const int n = km.count(p);
    const Eigen::VectorXd wsqrt = weights_[p].cwiseSqrt();

    // Symmetrized Laplacian W^(1/2) L W^(-1/2): same spectrum, plain symmetric.
    Eigen::MatrixXd L = Eigen::MatrixXd(laplacian(p));
    Eigen::MatrixXd Ls = wsqrt.asDiagonal() * L *
                         wsqrt.cwiseInverse().asDiagonal();
    Ls = 0.5 * (Ls + Ls.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Ls);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double lmax = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int kdim = 0;
    for (int i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i)) < 1e-9 * lmax) ++kdim;
    rep.harmonic_dim = kdim;

    // Harmonic basis, W-orthonormal after back-transformation.
    Eigen::MatrixXd H(n, kdim);
    {
      int col = 0;
      for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) < 1e-9 * lmax)
          H.col(col++) = eig.eigenvectors().col(i).cwiseQuotient(wsqrt);
      }
    }

    // Probe decomposition C^p = Im d^(p-1) + Ker Delta_p + Im d*_(p+1).
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = gauss(rng);
    const auto wdot = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
      return u.cwiseProduct(v).dot(weights_[p]);
    };

    Eigen::VectorXd exact = Eigen::VectorXd::Zero(n);
    if (p > 0) {
      Eigen::MatrixXd D = Eigen::MatrixXd(fc_->K().coboundary_matrix(p - 1));
      // W-orthogonal projection onto the column span of D
      Eigen::MatrixXd A = wsqrt.asDiagonal() * D;
      Eigen::VectorXd y = A.colPivHouseholderQr().solve(wsqrt.asDiagonal() * x);
      exact = D * y;
    }
    Eigen::VectorXd coexact = Eigen::VectorXd::Zero(n);
    if (p < d) {
      Eigen::MatrixXd Dt = Eigen::MatrixXd(fc_->K().coboundary_matrix(p));
      Eigen::MatrixXd M = weights_[p].cwiseInverse().asDiagonal() *
                          Dt.transpose() * weights_[p + 1].asDiagonal();
      Eigen::MatrixXd A = wsqrt.asDiagonal() * M;
      Eigen::VectorXd y = A.colPivHouseholderQr().solve(wsqrt.asDiagonal() * x);
      coexact = M * y;
    }
    Eigen::VectorXd harmonic = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < kdim; ++k)
      harmonic += wdot(H.col(k), x) / wdot(H.col(k), H.col(k)) * H.col(k);

    const double xn = std::sqrt(wdot(x, x));
    rep.decomposition_residual =
        std::sqrt(wdot(x - exact - harmonic - coexact,
                       x - exact - harmonic - coexact)) /
        xn;
    double orth = std::abs(wdot(exact, harmonic));
    orth = std::max(orth, std::abs(wdot(exact, coexact)));
    orth = std::max(orth, std::abs(wdot(harmonic, coexact)));
    rep.orthogonality_residual = orth / (xn * xn);

    report.degrees.push_back(rep);
  }
  return report;
}

} // namespace fdf
