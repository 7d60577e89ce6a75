#include "fdf.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "../core/forman.hpp"
#include "../core/mesh_io.hpp"
#include "../core/meshgen.hpp"
#include "../core/metric.hpp"
#include "../core/runio.hpp"

using namespace fdf;

namespace {

thread_local std::string g_last_error;

fdf_status status_from(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return FDF_ERR_IO;
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedSection: return FDF_ERR_PARSE;
    case ErrorKind::MissingFace:
    case ErrorKind::DiamondViolation:
    case ErrorKind::InvalidGeometry: return FDF_ERR_INVALID_MESH;
    case ErrorKind::NonOrientable: return FDF_ERR_NONORIENTABLE;
    case ErrorKind::NonCubicalCorners: return FDF_ERR_NONCUBICAL;
    case ErrorKind::DegenerateCell:
    case ErrorKind::NumericallyDegenerate: return FDF_ERR_DEGENERATE;
    case ErrorKind::SolverDivergence: return FDF_ERR_SOLVER;
    case ErrorKind::ConflictingBC: return FDF_ERR_CONFLICT;
    default: return FDF_ERR_BADARG;
  }
}

template <typename Fn>
fdf_status guarded(Fn&& fn) {
  try {
    fn();
    return FDF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FDF_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

struct fdf_mesh {
  std::shared_ptr<const Mesh> mesh;
};

struct fdf_forman {
  std::shared_ptr<const FormanComplex> fc;
};

struct fdf_config {
  RunConfig cfg;
};

struct fdf_solve_result {
  SolveArtifacts art;
  std::shared_ptr<const FormanComplex> fc;
};

struct fdf_curve {
  PercolationCurve curve;
};

extern "C" {

const char* fdf_version(void) { return "0.1.0"; }

const char* fdf_last_error(void) { return g_last_error.c_str(); }

void fdf_string_free(char* s) { std::free(s); }

fdf_status fdf_mesh_load(const char* path, fdf_mesh** out) {
  if (!path || !out) return FDF_ERR_BADARG;
  return guarded([&] { *out = new fdf_mesh{load_mesh(path)}; });
}

fdf_status fdf_mesh_grid(int n, fdf_mesh** out) {
  if (!out) return FDF_ERR_BADARG;
  return guarded([&] { *out = new fdf_mesh{regular_grid(n)}; });
}

fdf_status fdf_mesh_source(const char* source, fdf_mesh** out) {
  if (!source || !out) return FDF_ERR_BADARG;
  return guarded([&] { *out = new fdf_mesh{load_mesh_source(source)}; });
}

fdf_status fdf_mesh_save(const fdf_mesh* mesh, const char* path) {
  if (!mesh || !path) return FDF_ERR_BADARG;
  return guarded([&] { write_polymesh_file(path, *mesh->mesh); });
}

fdf_status fdf_mesh_dim(const fdf_mesh* mesh, int* dim) {
  if (!mesh || !dim) return FDF_ERR_BADARG;
  *dim = mesh->mesh->dim();
  return FDF_OK;
}

fdf_status fdf_mesh_counts(const fdf_mesh* mesh, int counts[4]) {
  if (!mesh || !counts) return FDF_ERR_BADARG;
  for (int p = 0; p <= kMaxDim; ++p)
    counts[p] = p <= mesh->mesh->dim() ? mesh->mesh->count(p) : 0;
  return FDF_OK;
}

fdf_status fdf_mesh_validate(const fdf_mesh* mesh, int* manifold_like,
                             int* cubical_corners, char** report) {
  if (!mesh) return FDF_ERR_BADARG;
  return guarded([&] {
    const ValidationReport rep = mesh->mesh->validate();
    if (manifold_like) *manifold_like = rep.is_manifold_like ? 1 : 0;
    if (cubical_corners) *cubical_corners = rep.has_cubical_corners ? 1 : 0;
    if (report) {
      std::ostringstream os;
      os << "manifold_like: " << (rep.is_manifold_like ? "yes" : "no") << "\n";
      os << "cubical_corners: " << (rep.has_cubical_corners ? "yes" : "no")
         << "\n";
      os << "boundary_cells: " << rep.boundary_cell_ids.size() << "\n";
      for (const auto& f : rep.failures) {
        os << "failure: " << f.rule << " at";
        const std::size_t shown = std::min<std::size_t>(f.cells.size(), 8);
        for (std::size_t i = 0; i < shown; ++i)
          os << " (" << f.cells[i].dim << "," << f.cells[i].index << ")";
        if (f.cells.size() > shown) os << " ... " << f.cells.size() << " cells";
        os << "\n";
      }
      *report = dup_string(os.str());
    }
  });
}

fdf_status fdf_mesh_betti(const fdf_mesh* mesh, int betti[4], int* len) {
  if (!mesh || !betti) return FDF_ERR_BADARG;
  return guarded([&] {
    auto oc = OrientedComplex::orient_compatibly(mesh->mesh);
    const std::vector<int> b = oc->betti_numbers();
    for (std::size_t i = 0; i < b.size(); ++i) betti[i] = b[i];
    if (len) *len = static_cast<int>(b.size());
  });
}

fdf_status fdf_mesh_boundary_coo(const fdf_mesh* mesh, int p, const char* path) {
  if (!mesh || !path) return FDF_ERR_BADARG;
  return guarded([&] {
    if (p < 1 || p > mesh->mesh->dim())
      fail(ErrorKind::InvalidArgument, "boundary matrix dimension out of range");
    auto oc = OrientedComplex::orient_compatibly(mesh->mesh);
    std::ofstream out(path);
    if (!out) fail(ErrorKind::IoError, std::string("cannot open ") + path);
    oc->write_boundary_coo(p, out);
  });
}

void fdf_mesh_free(fdf_mesh* mesh) { delete mesh; }

fdf_status fdf_forman_build(const fdf_mesh* mesh, fdf_forman** out) {
  if (!mesh || !out) return FDF_ERR_BADARG;
  return guarded([&] {
    auto oc = OrientedComplex::orient_compatibly(mesh->mesh);
    *out = new fdf_forman{FormanComplex::build(oc)};
  });
}

fdf_status fdf_forman_counts(const fdf_forman* fc, int counts[4]) {
  if (!fc || !counts) return FDF_ERR_BADARG;
  for (int p = 0; p <= kMaxDim; ++p)
    counts[p] = p <= fc->fc->dim() ? fc->fc->pairs().count(p) : 0;
  return FDF_OK;
}

fdf_status fdf_forman_save(const fdf_forman* fc, const char* mesh_path,
                           const char* pairs_path) {
  if (!fc || !mesh_path) return FDF_ERR_BADARG;
  return guarded([&] {
    write_polymesh_file(mesh_path, fc->fc->K().mesh());
    if (pairs_path) {
      std::ofstream out(pairs_path);
      if (!out) fail(ErrorKind::IoError, std::string("cannot open ") + pairs_path);
      out << "# kdim kindex q iq r ir\n";
      for (int k = 0; k <= fc->fc->dim(); ++k) {
        for (int i = 0; i < fc->fc->pairs().count(k); ++i) {
          const PairRef& pr = fc->fc->pair_of_kcell(k, i);
          out << k << " " << i << " " << pr.q << " " << pr.iq << " " << pr.r
              << " " << pr.ir << "\n";
        }
      }
    }
  });
}

void fdf_forman_free(fdf_forman* fc) { delete fc; }

fdf_status fdf_hodge_check(const fdf_mesh* mesh, int curvature_mode,
                           char** report, int* ok) {
  if (!mesh) return FDF_ERR_BADARG;
  return guarded([&] {
    auto oc = OrientedComplex::orient_compatibly(mesh->mesh);
    auto fc = FormanComplex::build(oc);
    auto mc = MetricContext::build(
        fc, curvature_mode ? CurvatureMode::Curvature : CurvatureMode::Trivial);
    const HodgeReport rep = mc->hodge_report();
    bool pass = rep.kernel_matches_betti();
    std::ostringstream os;
    for (const auto& r : rep.degrees) {
      pass = pass && r.decomposition_residual <= 1e-9 &&
             r.orthogonality_residual <= 1e-9;
      os << "p=" << r.degree << " harmonic_dim=" << r.harmonic_dim
         << " betti=" << r.betti << " decomposition_residual="
         << r.decomposition_residual
         << " orthogonality_residual=" << r.orthogonality_residual << "\n";
    }
    if (report) *report = dup_string(os.str());
    if (ok) *ok = pass ? 1 : 0;
  });
}

fdf_status fdf_config_new(fdf_config** out) {
  if (!out) return FDF_ERR_BADARG;
  *out = new fdf_config{};
  return FDF_OK;
}

fdf_status fdf_config_load(fdf_config* cfg, const char* path) {
  if (!cfg || !path) return FDF_ERR_BADARG;
  return guarded([&] { cfg->cfg = parse_run_config_file(path); });
}

fdf_status fdf_config_set(fdf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return FDF_ERR_BADARG;
  return guarded([&] { apply_config_setting(cfg->cfg, key, value, "config"); });
}

void fdf_config_free(fdf_config* cfg) { delete cfg; }

fdf_status fdf_solve(const fdf_config* cfg, fdf_solve_result** out) {
  if (!cfg || !out) return FDF_ERR_BADARG;
  return guarded([&] {
    auto res = new fdf_solve_result{run_solve(cfg->cfg), nullptr};
    res->fc = res->art.metric->forman_ptr();
    *out = res;
  });
}

fdf_status fdf_result_residual(const fdf_solve_result* res, double* out) {
  if (!res || !out) return FDF_ERR_BADARG;
  *out = res->art.solution.residual;
  return FDF_OK;
}

fdf_status fdf_result_alpha_eff(const fdf_solve_result* res, double* out) {
  if (!res || !out) return FDF_ERR_BADARG;
  *out = res->art.alpha_eff;
  return FDF_OK;
}

fdf_status fdf_result_flux_count(const fdf_solve_result* res, int* out) {
  if (!res || !out) return FDF_ERR_BADARG;
  *out = static_cast<int>(res->art.fluxes.size());
  return FDF_OK;
}

fdf_status fdf_result_flux(const fdf_solve_result* res, int i, double* total,
                           double by_class[3]) {
  if (!res || i < 0 || i >= static_cast<int>(res->art.fluxes.size()))
    return FDF_ERR_BADARG;
  const FluxSummary& f = res->art.fluxes[i].flux;
  if (total) *total = f.total;
  if (by_class)
    for (int c = 0; c < 3; ++c) by_class[c] = f.by_class[c];
  return FDF_OK;
}

fdf_status fdf_result_write_nodes_csv(const fdf_solve_result* res,
                                      const char* path) {
  if (!res || !path) return FDF_ERR_BADARG;
  return guarded([&] { write_nodes_csv(path, *res->fc, res->art.solution.u); });
}

fdf_status fdf_result_write_flux_csv(const fdf_solve_result* res,
                                     const char* path) {
  if (!res || !path) return FDF_ERR_BADARG;
  return guarded(
      [&] { write_flux_csv(path, res->art.fluxes, res->art.alpha_eff); });
}

void fdf_result_free(fdf_solve_result* res) { delete res; }

fdf_status fdf_percolate(const fdf_config* cfg, fdf_curve** out) {
  if (!cfg || !out) return FDF_ERR_BADARG;
  return guarded([&] { *out = new fdf_curve{run_percolation(cfg->cfg)}; });
}

fdf_status fdf_curve_size(const fdf_curve* curve, int* out) {
  if (!curve || !out) return FDF_ERR_BADARG;
  *out = static_cast<int>(curve->curve.points.size());
  return FDF_OK;
}

fdf_status fdf_curve_point(const fdf_curve* curve, int i, double* fraction,
                           double* cumulative_measure, double* mean,
                           double* stddev, int* n_failed) {
  if (!curve || i < 0 || i >= static_cast<int>(curve->curve.points.size()))
    return FDF_ERR_BADARG;
  const PercolationPoint& pt = curve->curve.points[i];
  if (fraction) *fraction = pt.fraction;
  if (cumulative_measure) *cumulative_measure = pt.cumulative_measure;
  if (mean) *mean = pt.mean_alpha_eff;
  if (stddev) *stddev = pt.std_alpha_eff;
  if (n_failed) *n_failed = pt.n_failed;
  return FDF_OK;
}

fdf_status fdf_curve_write_csv(const fdf_curve* curve, const char* path) {
  if (!curve || !path) return FDF_ERR_BADARG;
  return guarded([&] { write_percolation_csv(path, curve->curve); });
}

void fdf_curve_free(fdf_curve* curve) { delete curve; }

} // extern "C"
