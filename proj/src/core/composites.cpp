#include "composites.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace fdf {

std::vector<int> path_permutation(const CounterRng& rng, std::uint64_t path, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.draw(path, static_cast<std::uint64_t>(i)) %
                                   static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

namespace {

/// K-edges covered by one inclusion cell.
void covered_kedges(const FormanComplex& fc, InclusionKind kind, int cell,
                    std::vector<int>& out) {
  out.clear();
  const Mesh& m = fc.base().mesh();
  if (kind == InclusionKind::GNP) {
    // inside the face: pairs (edge < face); along its boundary: (node < edge)
    for (int e : m.faces(2, cell, 1)) {
      out.push_back(fc.kcell_of_pair(2, cell, 1, e));
      for (int v : m.hyperfaces(1, e))
        out.push_back(fc.kcell_of_pair(1, e, 0, v));
    }
  } else {
    for (int v : m.hyperfaces(1, cell))
      out.push_back(fc.kcell_of_pair(1, cell, 0, v));
  }
}

} // namespace

DiffusivityAssignment assign_inclusions(const FormanComplex& fc, InclusionKind kind,
                                        const std::vector<int>& selected,
                                        double matrix_alpha, double inclusion_alpha) {
  const Mesh& m = fc.base().mesh();
  const int want_dim = kind == InclusionKind::GNP ? 2 : 1;
  for (int c : selected) {
    if (c < 0 || c >= m.count(want_dim))
      fail(ErrorKind::DimensionMismatch,
           "inclusion cell " + std::to_string(c) + " is not a valid " +
               std::to_string(want_dim) + "-cell");
  }
  DiffusivityAssignment da = DiffusivityAssignment::uniform(fc, matrix_alpha);
  std::vector<int> edges;
  for (int c : selected) {
    covered_kedges(fc, kind, c, edges);
    for (int e : edges) da.alpha[e] = std::max(da.alpha[e], inclusion_alpha);
  }
  return da;
}

PercolationCurve percolation_sweep(std::shared_ptr<const MetricContext> mc,
                                   const InclusionStudy& study,
                                   const PlaneSurface& bottom,
                                   const PlaneSurface& top, double solver_tol,
                                   int threads) {
  if (study.paths < 1 || study.fractions < 2)
    fail(ErrorKind::InvalidArgument, "study needs paths >= 1 and fractions >= 2");
  const FormanComplex& fc = mc->forman();
  const Mesh& m = fc.base().mesh();
  const int cell_dim = study.kind == InclusionKind::GNP ? 2 : 1;
  const int n_candidates = m.count(cell_dim);
  const CounterRng rng{study.seed};

  // Shared Dirichlet setup: u = 1 on top, u = 0 on bottom.
  BoundaryConditionSet bc;
  for (int v : surface_knodes(fc, bottom)) bc.dirichlet.push_back({v, 0.0});
  for (int v : surface_knodes(fc, top)) bc.dirichlet.push_back({v, 1.0});
  const std::vector<int> bottom_nodes = surface_knodes(fc, bottom);

  // Geometry of the measurement: distance between the two planes and the
  // cross-section area of the bounding box.
  double h = std::abs(top.coord - bottom.coord);
  Eigen::Vector3d lo = m.vertex(0), hi = m.vertex(0);
  for (const auto& v : m.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  double area = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (a == bottom.axis || a >= m.embedding_dim()) continue;
    area *= (hi[a] - lo[a]);
  }

  const int nf = study.fractions;
  PercolationCurve curve;
  curve.samples =
      Eigen::MatrixXd::Constant(nf, study.paths,
                                std::numeric_limits<double>::quiet_NaN());
  Eigen::MatrixXd cum(nf, study.paths);

  auto run_path = [&](int path, DiffusionSystem& system) {
    const std::vector<int> perm = path_permutation(rng, path, n_candidates);
    std::vector<int> counts(nf);
    for (int j = 0; j < nf; ++j) {
      const double f = static_cast<double>(j) / (nf - 1);
      counts[j] = static_cast<int>(std::lround(f * n_candidates));
    }
    Eigen::VectorXd alpha =
        Eigen::VectorXd::Constant(fc.pairs().count(1), study.matrix_alpha);
    std::vector<int> edges;
    double measure_sum = 0.0;
    int taken = 0;
    for (int j = 0; j < nf; ++j) {
      for (; taken < counts[j]; ++taken) {
        const int cell = perm[taken];
        measure_sum += m.measure(cell_dim, cell);
        covered_kedges(fc, study.kind, cell, edges);
        for (int e : edges)
          alpha[e] = std::max(alpha[e], study.inclusion_alpha);
      }
      cum(j, path) = measure_sum;
      try {
        system.set_alpha(alpha);
        const SteadySolution sol = system.solve_steady(solver_tol);
        const FluxSummary fs =
            boundary_flux(*mc, system.assignment(), sol.u, bottom_nodes);
        curve.samples(j, path) =
            effective_diffusivity(fs.total, h, area, 0.0, 1.0);
      } catch (const Error&) {
        // recorded as a failed sample; spikes from poor conditioning
      }
    }
  };

  const int nthreads = std::max(1, std::min(threads, study.paths));
  if (nthreads == 1) {
    DiffusionSystem system(mc, DiffusivityAssignment::uniform(fc, 1.0));
    system.apply_boundary_conditions(bc);
    for (int path = 0; path < study.paths; ++path) run_path(path, system);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        DiffusionSystem system(mc, DiffusivityAssignment::uniform(fc, 1.0));
        system.apply_boundary_conditions(bc);
        for (;;) {
          const int path = next.fetch_add(1);
          if (path >= study.paths) break;
          run_path(path, system);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (int j = 0; j < nf; ++j) {
    PercolationPoint pt;
    pt.fraction = static_cast<double>(j) / (nf - 1);
    double sum = 0.0, sum2 = 0.0, csum = 0.0;
    int ok = 0;
    for (int path = 0; path < study.paths; ++path) {
      const double v = curve.samples(j, path);
      csum += cum(j, path);
      if (std::isnan(v)) {
        ++pt.n_failed;
        continue;
      }
      sum += v;
      sum2 += v * v;
      ++ok;
    }
    pt.cumulative_measure = csum / study.paths;
    if (ok > 0) {
      pt.mean_alpha_eff = sum / ok;
      const double var = std::max(0.0, sum2 / ok - pt.mean_alpha_eff * pt.mean_alpha_eff);
      pt.std_alpha_eff = std::sqrt(var);
    }
    curve.points.push_back(pt);
  }
  return curve;
}

} // namespace fdf
