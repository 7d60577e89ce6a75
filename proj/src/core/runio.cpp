#include "runio.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mesh_io.hpp"
#include "meshgen.hpp"

namespace fdf {

namespace {

int axis_from_token(const std::string& tok, const std::string& context) {
  if (tok == "x" || tok == "0") return 0;
  if (tok == "y" || tok == "1") return 1;
  if (tok == "z" || tok == "2") return 2;
  fail(ErrorKind::ParseError, context + ": bad axis '" + tok + "'");
}

} // namespace

void apply_config_setting(RunConfig& cfg, const std::string& key,
                          const std::string& value, const std::string& where) {
  auto as_double = [&](const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, where + ": bad number '" + v + "'");
    }
  };
  auto as_int = [&](const std::string& v) {
    try {
      return std::stol(v);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, where + ": bad integer '" + v + "'");
    }
  };

  if (key == "mesh") cfg.mesh = value;
  else if (key == "curvature") {
    if (value == "trivial") cfg.curvature = CurvatureMode::Trivial;
    else if (value == "curvature") cfg.curvature = CurvatureMode::Curvature;
    else fail(ErrorKind::ParseError, where + ": curvature must be trivial|curvature");
  } else if (key == "alpha_default") cfg.alpha_default = as_double(value);
  else if (key == "alpha_node_edge") cfg.alpha_class[0] = as_double(value);
  else if (key == "alpha_edge_face") cfg.alpha_class[1] = as_double(value);
  else if (key == "alpha_face_volume") cfg.alpha_class[2] = as_double(value);
  else if (key == "dirichlet" || key == "neumann") {
    std::istringstream vs(value);
    std::string ax;
    double coord, val;
    if (!(vs >> ax >> coord >> val))
      fail(ErrorKind::ParseError, where + ": expected '<axis> <coord> <value>'");
    BCSpec spec;
    spec.axis = axis_from_token(ax, where);
    spec.coord = coord;
    spec.value = val;
    spec.is_neumann = (key == "neumann");
    cfg.bcs.push_back(spec);
  } else if (key == "solver_tol") cfg.solver_tol = as_double(value);
  else if (key == "plane_tol") cfg.plane_tol_rel = as_double(value);
  else if (key == "out") cfg.out = value;
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_int(value));
  else if (key == "study") {
    if (value != "gnp" && value != "cnt")
      fail(ErrorKind::ParseError, where + ": study must be gnp|cnt");
    cfg.study = value;
  } else if (key == "matrix_alpha") cfg.matrix_alpha = as_double(value);
  else if (key == "inclusion_alpha") cfg.inclusion_alpha = as_double(value);
  else if (key == "paths") cfg.paths = static_cast<int>(as_int(value));
  else if (key == "fractions") cfg.fractions = static_cast<int>(as_int(value));
  else if (key == "threads") cfg.threads = static_cast<int>(as_int(value));
  else fail(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
}

RunConfig parse_run_config(std::istream& in, const std::string& name) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::ParseError, where + ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail(ErrorKind::ParseError, where + ": empty value");
    apply_config_setting(cfg, key, value, where);
  }
  return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return parse_run_config(in, path);
}

std::shared_ptr<const Mesh> load_mesh_source(const std::string& source) {
  if (source.empty()) fail(ErrorKind::InvalidArgument, "no mesh source given");
  if (source.rfind("grid:", 0) == 0) {
    const int n = std::atoi(source.c_str() + 5);
    if (n < 1) fail(ErrorKind::InvalidArgument, "bad grid size in '" + source + "'");
    return regular_grid(n);
  }
  return load_mesh(source);
}

int env_thread_count() {
  const char* env = std::getenv("FDF_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

BoundaryConditionSet build_bc_set(const FormanComplex& fc, const RunConfig& config,
                                  double scale) {
  BoundaryConditionSet bc;
  for (const BCSpec& spec : config.bcs) {
    PlaneSurface plane{spec.axis, spec.coord, config.plane_tol_rel * scale};
    const std::vector<int> nodes = surface_knodes(fc, plane);
    if (nodes.empty())
      fail(ErrorKind::InvalidArgument,
           "boundary plane selects no K-nodes (axis " + std::to_string(spec.axis) +
               ", coord " + std::to_string(spec.coord) + ")");
    for (int v : nodes) {
      if (spec.is_neumann) bc.neumann_flux.push_back({v, spec.value});
      else bc.dirichlet.push_back({v, spec.value});
    }
  }
  return bc;
}

SolveArtifacts run_solve(const RunConfig& config) {
  auto mesh = load_mesh_source(config.mesh);
  auto oc = OrientedComplex::orient_compatibly(mesh);
  auto fc = FormanComplex::build(oc);
  auto mc = MetricContext::build(fc, config.curvature);

  SolveArtifacts art;
  art.metric = mc;

  // Per-class diffusivities.
  const std::vector<EdgeClass> classes = classify_edges(*fc);
  Eigen::VectorXd alpha(fc->pairs().count(1));
  for (int e = 0; e < alpha.size(); ++e) {
    const auto& cls = config.alpha_class[static_cast<int>(classes[e])];
    alpha[e] = cls ? *cls : config.alpha_default;
  }
  art.assignment.alpha = alpha;

  const double scale = mesh->bbox_diagonal();
  const BoundaryConditionSet bc = build_bc_set(*fc, config, scale);
  if (bc.dirichlet.empty())
    fail(ErrorKind::InvalidArgument, "solve needs at least one Dirichlet plane");

  DiffusionSystem system(mc, art.assignment);
  system.apply_boundary_conditions(bc);
  art.solution = system.solve_steady(config.solver_tol);

  for (const BCSpec& spec : config.bcs) {
    if (spec.is_neumann) continue;
    PlaneSurface plane{spec.axis, spec.coord, config.plane_tol_rel * scale};
    SurfaceFlux sf;
    sf.spec = spec;
    sf.flux = boundary_flux(*mc, art.assignment, art.solution.u,
                            surface_knodes(*fc, plane));
    art.fluxes.push_back(sf);
  }

  // Effective diffusivity when the run is a two-plane measurement.
  std::vector<const SurfaceFlux*> dirichlet_planes;
  for (const auto& sf : art.fluxes) dirichlet_planes.push_back(&sf);
  if (dirichlet_planes.size() == 2 &&
      dirichlet_planes[0]->spec.axis == dirichlet_planes[1]->spec.axis &&
      dirichlet_planes[0]->spec.value != dirichlet_planes[1]->spec.value) {
    const Mesh& m = *mesh;
    Eigen::Vector3d lo = m.vertex(0), hi = m.vertex(0);
    for (const auto& v : m.vertices()) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    double area = 1.0;
    for (int a = 0; a < m.embedding_dim(); ++a) {
      if (a == dirichlet_planes[0]->spec.axis) continue;
      area *= (hi[a] - lo[a]);
    }
    const double h =
        std::abs(dirichlet_planes[0]->spec.coord - dirichlet_planes[1]->spec.coord);
    const double u0 =
        std::min(dirichlet_planes[0]->spec.value, dirichlet_planes[1]->spec.value);
    const double u1 =
        std::max(dirichlet_planes[0]->spec.value, dirichlet_planes[1]->spec.value);
    art.plane_distance = h;
    art.cross_section = area;
    art.alpha_eff =
        effective_diffusivity(dirichlet_planes[0]->flux.total, h, area, u0, u1);
  }
  return art;
}

PercolationCurve run_percolation(const RunConfig& config) {
  if (config.study != "gnp" && config.study != "cnt")
    fail(ErrorKind::InvalidArgument, "percolation needs study = gnp|cnt");
  auto mesh = load_mesh_source(config.mesh);
  auto oc = OrientedComplex::orient_compatibly(mesh);
  auto fc = FormanComplex::build(oc);
  auto mc = MetricContext::build(fc, config.curvature);

  std::vector<const BCSpec*> planes;
  for (const auto& spec : config.bcs)
    if (!spec.is_neumann) planes.push_back(&spec);
  if (planes.size() != 2 || planes[0]->axis != planes[1]->axis)
    fail(ErrorKind::InvalidArgument,
         "percolation needs exactly two Dirichlet planes on one axis");
  const BCSpec* bottom = planes[0]->value <= planes[1]->value ? planes[0] : planes[1];
  const BCSpec* top = planes[0]->value <= planes[1]->value ? planes[1] : planes[0];

  InclusionStudy study;
  study.kind = config.study == "gnp" ? InclusionKind::GNP : InclusionKind::CNT;
  study.matrix_alpha = config.matrix_alpha;
  study.inclusion_alpha = config.inclusion_alpha;
  study.paths = config.paths;
  study.fractions = config.fractions;
  study.seed = config.seed;

  const double tol = config.plane_tol_rel * mesh->bbox_diagonal();
  return percolation_sweep(mc, study, PlaneSurface{bottom->axis, bottom->coord, tol},
                           PlaneSurface{top->axis, top->coord, tol},
                           config.solver_tol,
                           config.threads > 0 ? config.threads : env_thread_count());
}

void write_nodes_csv(const std::string& path, const FormanComplex& fc,
                     const Cochain& u) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  out << "id,x,y,z,origin_dim,u\n";
  out << std::setprecision(17);
  const Mesh& km = fc.K().mesh();
  for (int v = 0; v < km.count(0); ++v) {
    const PairRef& pr = fc.pairs().pair_of(0, v);
    const auto& p = km.vertex(v);
    out << v << "," << p[0] << "," << p[1] << "," << p[2] << "," << pr.q << ","
        << u.values[v] << "\n";
  }
}

void write_flux_csv(const std::string& path, const std::vector<SurfaceFlux>& rows,
                    double alpha_eff) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  out << "surface,total,node_edge,edge_face,face_volume,alpha_eff\n";
  out << std::setprecision(17);
  const char axis_names[] = {'x', 'y', 'z'};
  for (const auto& sf : rows) {
    out << axis_names[sf.spec.axis] << "=" << sf.spec.coord << "," << sf.flux.total
        << "," << sf.flux.by_class[0] << "," << sf.flux.by_class[1] << ","
        << sf.flux.by_class[2] << "," << alpha_eff << "\n";
  }
}

void write_percolation_csv(const std::string& path, const PercolationCurve& curve) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  out << "fraction,cumulative_measure,mean_alpha_eff,std,n_failed\n";
  out << std::setprecision(17);
  for (const auto& pt : curve.points) {
    out << pt.fraction << "," << pt.cumulative_measure << "," << pt.mean_alpha_eff
        << "," << pt.std_alpha_eff << "," << pt.n_failed << "\n";
  }
}

} // namespace fdf
