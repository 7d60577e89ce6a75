#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

#include "composites.hpp"
#include "diffusion.hpp"

namespace fdf {

/// One boundary-condition line: an axis-aligned plane with a prescribed
/// value (Dirichlet) or total flux (Neumann).
struct BCSpec {
  int axis = 2;
  double coord = 0.0;
  double value = 0.0;
  bool is_neumann = false;
};

/// Key-value run configuration shared by the solve/alpha-eff/percolate
/// pipelines. See README for the file format.
struct RunConfig {
  std::string mesh; // "grid:N" or a mesh file path
  CurvatureMode curvature = CurvatureMode::Curvature;
  double alpha_default = 1.0;
  std::optional<double> alpha_class[3]; // per edge class
  std::vector<BCSpec> bcs;
  double solver_tol = 1e-10;
  double plane_tol_rel = 1e-9; // plane membership, relative to bbox diagonal
  std::string out;
  std::uint64_t seed = 0;
  // percolation study
  std::string study; // "gnp" or "cnt"
  double matrix_alpha = 1e-10;
  double inclusion_alpha = 1.0;
  int paths = 200;
  int fractions = 51;
  int threads = 0; // 0 = take FDF_THREADS from the environment
};

RunConfig parse_run_config(std::istream& in, const std::string& name);
RunConfig parse_run_config_file(const std::string& path);

/// Applies one "key = value" setting; used by both the file parser and the
/// C API. `context` prefixes error messages.
void apply_config_setting(RunConfig& cfg, const std::string& key,
                          const std::string& value, const std::string& context);

std::shared_ptr<const Mesh> load_mesh_source(const std::string& source);

struct SurfaceFlux {
  BCSpec spec;
  FluxSummary flux;
};

struct SolveArtifacts {
  std::shared_ptr<const MetricContext> metric;
  DiffusivityAssignment assignment;
  SteadySolution solution;
  std::vector<SurfaceFlux> fluxes; // one per Dirichlet plane
  double alpha_eff = std::numeric_limits<double>::quiet_NaN();
  double plane_distance = 0.0;
  double cross_section = 0.0;
};

/// Builds K and the metric, assembles the per-class diffusivities, applies
/// the configured boundary conditions and solves to steady state.
SolveArtifacts run_solve(const RunConfig& config);

PercolationCurve run_percolation(const RunConfig& config);

/// Builds the boundary-condition node sets for the configured planes.
BoundaryConditionSet build_bc_set(const FormanComplex& fc, const RunConfig& config,
                                  double scale);

void write_nodes_csv(const std::string& path, const FormanComplex& fc,
                     const Cochain& u);
void write_flux_csv(const std::string& path, const std::vector<SurfaceFlux>& rows,
                    double alpha_eff);
void write_percolation_csv(const std::string& path, const PercolationCurve& curve);

/// Thread count from FDF_THREADS, defaulting to 1.
int env_thread_count();

} // namespace fdf
