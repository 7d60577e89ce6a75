#include "diffusion.hpp"

#include <set>

namespace fdf {

std::vector<EdgeClass> classify_edges(const FormanComplex& fc) {
  const int n = fc.pairs().count(1);
  std::vector<EdgeClass> out(n);
  for (int i = 0; i < n; ++i) {
    const PairRef& pr = fc.pair_of_kcell(1, i);
    out[i] = static_cast<EdgeClass>(pr.r);
  }
  return out;
}

DiffusivityAssignment DiffusivityAssignment::uniform(const FormanComplex& fc,
                                                     double value) {
  if (!(value > 0.0))
    fail(ErrorKind::NonPositiveAlpha, "diffusivity must be positive");
  DiffusivityAssignment da;
  da.alpha = Eigen::VectorXd::Constant(fc.pairs().count(1), value);
  return da;
}

std::vector<int> surface_knodes(const FormanComplex& fc, const PlaneSurface& s) {
  const Mesh& m = fc.base().mesh();
  std::vector<int> out;
  for (int ik = 0; ik < fc.pairs().count(0); ++ik) {
    const PairRef& pr = fc.pairs().pair_of(0, ik);
    bool inside = true;
    if (pr.q == 0) {
      inside = std::abs(m.vertex(pr.iq)[s.axis] - s.coord) <= s.tol;
    } else {
      for (int v : m.faces(pr.q, pr.iq, 0)) {
        if (std::abs(m.vertex(v)[s.axis] - s.coord) > s.tol) {
          inside = false;
          break;
        }
      }
    }
    if (inside) out.push_back(ik);
  }
  return out;
}

DiffusionSystem::DiffusionSystem(std::shared_ptr<const MetricContext> mc,
                                 DiffusivityAssignment da)
    : mc_(std::move(mc)), da_(std::move(da)) {
  const int ne = mc_->K().mesh().count(1);
  if (da_.alpha.size() != ne)
    fail(ErrorKind::DimensionMismatch, "alpha vector length mismatch");
  if ((da_.alpha.array() <= 0.0).any())
    fail(ErrorKind::NonPositiveAlpha, "all diffusivities must be positive");
  assemble();
}

void DiffusionSystem::assemble() {
  const Eigen::SparseMatrix<double> cb = mc_->K().coboundary_matrix(0);
  const Eigen::VectorXd w = da_.alpha.cwiseProduct(mc_->weights(1));
  Eigen::SparseMatrix<double> wcb = w.asDiagonal() * cb;
  S_ = Eigen::SparseMatrix<double>(cb.transpose()) * wcb;
  factorized_ = false;
}

void DiffusionSystem::set_alpha(const Eigen::VectorXd& alpha) {
  if (alpha.size() != da_.alpha.size())
    fail(ErrorKind::DimensionMismatch, "alpha vector length mismatch");
  if ((alpha.array() <= 0.0).any())
    fail(ErrorKind::NonPositiveAlpha, "all diffusivities must be positive");
  da_.alpha = alpha;
  assemble();
  if (reduced_) {
    // Rebuild the reduced blocks with the new values, same pattern.
    const int n = static_cast<int>(red_index_.size());
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = neumann_rhs_;
    for (int col = 0; col < n; ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(S_, col); it; ++it) {
        const int row = static_cast<int>(it.row());
        if (is_dirichlet_[row]) continue;
        if (is_dirichlet_[col])
          rhs[row] -= it.value() * dirichlet_values_[col];
        else
          trips.emplace_back(red_index_[row], red_index_[col], it.value());
      }
    }
    S_red_.setFromTriplets(trips.begin(), trips.end());
    rhs_red_.resize(red_to_full_.size());
    for (std::size_t i = 0; i < red_to_full_.size(); ++i)
      rhs_red_[static_cast<int>(i)] = rhs[red_to_full_[i]];
    factorized_ = false;
  }
}

void DiffusionSystem::apply_boundary_conditions(const BoundaryConditionSet& bc) {
  const int n = mc_->K().mesh().count(0);
  is_dirichlet_.assign(n, 0);
  dirichlet_values_ = Eigen::VectorXd::Zero(n);
  neumann_rhs_ = Eigen::VectorXd::Zero(n);
  for (auto [node, value] : bc.dirichlet) {
    is_dirichlet_[node] = 1;
    dirichlet_values_[node] = value;
  }
  for (auto [node, flux] : bc.neumann_flux) {
    if (is_dirichlet_[node])
      fail(ErrorKind::ConflictingBC,
           "K-node " + std::to_string(node) +
               " appears in both Dirichlet and Neumann sets");
    neumann_rhs_[node] += flux;
  }

  red_index_.assign(n, -1);
  red_to_full_.clear();
  for (int i = 0; i < n; ++i) {
    if (!is_dirichlet_[i]) {
      red_index_[i] = static_cast<int>(red_to_full_.size());
      red_to_full_.push_back(i);
    }
  }
  const int m = static_cast<int>(red_to_full_.size());
  if (m == 0)
    fail(ErrorKind::InvalidArgument, "all nodes are Dirichlet-constrained");

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = neumann_rhs_;
  for (int col = 0; col < n; ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(S_, col); it; ++it) {
      const int row = static_cast<int>(it.row());
      if (is_dirichlet_[row]) continue;
      if (is_dirichlet_[col])
        rhs[row] -= it.value() * dirichlet_values_[col];
      else
        trips.emplace_back(red_index_[row], red_index_[col], it.value());
    }
  }
  S_red_.resize(m, m);
  S_red_.setFromTriplets(trips.begin(), trips.end());
  rhs_red_.resize(m);
  for (int i = 0; i < m; ++i) rhs_red_[i] = rhs[red_to_full_[i]];
  reduced_ = true;
  pattern_analyzed_ = false;
  factorized_ = false;
}

void DiffusionSystem::factorize_reduced() const {
  if (!pattern_analyzed_) {
    ldlt_.analyzePattern(S_red_);
    pattern_analyzed_ = true;
  }
  ldlt_.factorize(S_red_);
  if (ldlt_.info() != Eigen::Success)
    fail(ErrorKind::SolverDivergence, "sparse factorization failed");
  factorized_ = true;
}

Eigen::VectorXd DiffusionSystem::solve_reduced(const Eigen::VectorXd& rhs,
                                               double tol, const char* what) const {
  if (!factorized_) factorize_reduced();
  Eigen::VectorXd x = ldlt_.solve(rhs);
  const double rhs_norm = std::max(rhs.norm(), 1e-300);
  double res = (S_red_ * x - rhs).norm() / rhs_norm;
  // A few iterative refinement sweeps with the same factorization.
  for (int sweep = 0; sweep < 4 && res > tol; ++sweep) {
    const Eigen::VectorXd corr = ldlt_.solve(rhs - S_red_ * x);
    x += corr;
    res = (S_red_ * x - rhs).norm() / rhs_norm;
  }
  if (!(res <= tol))
    fail(ErrorKind::SolverDivergence,
         std::string(what) + ": residual " + std::to_string(res) +
             " above tolerance");
  return x;
}

SteadySolution DiffusionSystem::solve_steady(double tol) const {
  if (!reduced_)
    fail(ErrorKind::InvalidArgument,
         "apply_boundary_conditions before solving");
  Eigen::VectorXd x = solve_reduced(rhs_red_, tol, "steady solve");
  SteadySolution sol;
  sol.u.degree = 0;
  sol.u.values = dirichlet_values_;
  for (std::size_t i = 0; i < red_to_full_.size(); ++i)
    sol.u.values[red_to_full_[i]] = x[static_cast<int>(i)];
  const double rhs_norm = std::max(rhs_red_.norm(), 1e-300);
  sol.residual = (S_red_ * x - rhs_red_).norm() / rhs_norm;
  return sol;
}

Cochain DiffusionSystem::step_transient(const Cochain& u, double dt,
                                        double tol) const {
  if (!reduced_)
    fail(ErrorKind::InvalidArgument,
         "apply_boundary_conditions before stepping");
  if (!(dt > 0.0)) fail(ErrorKind::InvalidArgument, "dt must be positive");
  const int m = static_cast<int>(red_to_full_.size());
  const Eigen::VectorXd& w0 = mc_->weights(0);

  Eigen::VectorXd ur(m), w0r(m);
  for (int i = 0; i < m; ++i) {
    ur[i] = u.values[red_to_full_[i]];
    w0r[i] = w0[red_to_full_[i]];
  }
  // (W0 + dt S) u+ = W0 u + dt rhs  (backward Euler, dissipative sign)
  Eigen::SparseMatrix<double> A = S_red_ * dt;
  for (int i = 0; i < m; ++i) A.coeffRef(i, i) += w0r[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::SolverDivergence, "transient factorization failed");
  const Eigen::VectorXd rhs = w0r.cwiseProduct(ur) + dt * rhs_red_;
  Eigen::VectorXd x = solver.solve(rhs);
  const double rn = std::max(rhs.norm(), 1e-300);
  double res = (A * x - rhs).norm() / rn;
  for (int sweep = 0; sweep < 4 && res > tol; ++sweep) {
    x += solver.solve(rhs - A * x);
    res = (A * x - rhs).norm() / rn;
  }
  if (!(res <= tol))
    fail(ErrorKind::SolverDivergence, "transient step did not converge");

  Cochain out{0, dirichlet_values_};
  for (int i = 0; i < m; ++i) out.values[red_to_full_[i]] = x[i];
  return out;
}

Eigen::SparseMatrix<double> DiffusionSystem::modified_laplacian() const {
  return mc_->weights(0).cwiseInverse().asDiagonal() * S_;
}

double edge_flux(const MetricContext& mc, const DiffusivityAssignment& da,
                 const Cochain& u, int kedge) {
  const OrientedComplex& K = mc.K();
  auto nodes = K.mesh().hyperfaces(1, kedge);
  double du = 0.0;
  for (int s = 0; s < 2; ++s)
    du += K.boundary_sign(1, kedge, s) * u.values[nodes[s]];
  return -da.alpha[kedge] * mc.weights(1)[kedge] * du;
}

FluxSummary boundary_flux(const MetricContext& mc, const DiffusivityAssignment& da,
                          const Cochain& u, const std::vector<int>& surface_nodes) {
  const Mesh& km = mc.K().mesh();
  std::vector<char> in_surface(km.count(0), 0);
  for (int v : surface_nodes) in_surface[v] = 1;
  const std::vector<EdgeClass> classes = classify_edges(mc.forman());

  FluxSummary out;
  for (int e = 0; e < km.count(1); ++e) {
    auto nodes = km.hyperfaces(1, e);
    if (in_surface[nodes[0]] + in_surface[nodes[1]] != 1) continue;
    const double f = std::abs(edge_flux(mc, da, u, e));
    out.total += f;
    out.by_class[static_cast<int>(classes[e])] += f;
  }
  return out;
}

double effective_diffusivity(double flux, double h, double area, double u0,
                             double u1) {
  if (!(h > 0.0) || !(area > 0.0) || !(u1 > u0))
    fail(ErrorKind::InvalidGeometry,
         "effective diffusivity needs h > 0, area > 0 and u1 > u0");
  return flux * h / ((u1 - u0) * area);
}

} // namespace fdf
