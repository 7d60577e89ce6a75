// Command-line front end for the formandfc shared library. Everything goes
// through the public C API in fdf.h.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>

#include "fdf.h"

namespace {

int die(const char* what, fdf_status status) {
  std::fprintf(stderr, "error: %s: %s (status %d)\n", what, fdf_last_error(),
               static_cast<int>(status));
  return 1;
}

struct MeshHandle {
  fdf_mesh* m = nullptr;
  ~MeshHandle() { fdf_mesh_free(m); }
};

struct ConfigHandle {
  fdf_config* c = nullptr;
  ConfigHandle() { fdf_config_new(&c); }
  ~ConfigHandle() { fdf_config_free(c); }
};

struct CommonOpts {
  std::string mesh;
  std::string config;
  std::string out;
  std::string curvature;
  std::string seed;
  std::string tol;
};

/// Loads the config file (if any) and applies flag overrides.
int prepare_config(const CommonOpts& opts, fdf_config* cfg) {
  if (!opts.config.empty()) {
    if (auto s = fdf_config_load(cfg, opts.config.c_str()); s != FDF_OK)
      return die("loading config", s);
  }
  auto set = [&](const char* key, const std::string& value) -> int {
    if (value.empty()) return 0;
    if (auto s = fdf_config_set(cfg, key, value.c_str()); s != FDF_OK)
      return die(key, s);
    return 0;
  };
  if (int rc = set("mesh", opts.mesh)) return rc;
  if (int rc = set("out", opts.out)) return rc;
  if (int rc = set("curvature", opts.curvature)) return rc;
  if (int rc = set("seed", opts.seed)) return rc;
  if (int rc = set("solver_tol", opts.tol)) return rc;
  return 0;
}

int load_mesh_arg(const CommonOpts& opts, MeshHandle& mesh) {
  if (opts.mesh.empty()) {
    std::fprintf(stderr, "error: --mesh is required\n");
    return 1;
  }
  if (auto s = fdf_mesh_source(opts.mesh.c_str(), &mesh.m); s != FDF_OK)
    return die("loading mesh", s);
  return 0;
}

std::string out_path(const std::string& out, const char* suffix) {
  return out.empty() ? std::string(suffix) : out + "_" + suffix;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial differential forms diffusion toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--mesh", opts.mesh, "Mesh file (.tess or polymesh) or grid:N");
  app.add_option("--config", opts.config, "Run configuration file");
  app.add_option("--out", opts.out, "Output path stem");
  app.add_option("--curvature", opts.curvature,
                 "Metric weights: trivial or curvature");
  app.add_option("--seed", opts.seed, "Random seed");
  app.add_option("--tol", opts.tol, "Solver tolerance");

  auto* cmd_validate = app.add_subcommand(
      "validate", "Check manifold-likeness and cubical corners");
  auto* cmd_subdivide =
      app.add_subcommand("subdivide", "Write the Forman subdivision K");
  auto* cmd_betti = app.add_subcommand("betti", "Betti numbers of the mesh");
  std::string coo_dump;
  cmd_betti->add_option("--dump-boundary", coo_dump,
                        "Also write boundary matrices as COO text (path stem)");
  auto* cmd_hodge = app.add_subcommand(
      "hodge-check", "Harmonic dimensions vs Betti numbers and decomposition");
  auto* cmd_solve =
      app.add_subcommand("solve", "Steady diffusion solve from a config");
  auto* cmd_alpha =
      app.add_subcommand("alpha-eff", "Effective diffusivity of a config");
  auto* cmd_percolate =
      app.add_subcommand("percolate", "Monte Carlo percolation sweep");

  CLI11_PARSE(app, argc, argv);

  if (cmd_validate->parsed()) {
    MeshHandle mesh;
    if (int rc = load_mesh_arg(opts, mesh)) return rc;
    int manifold = 0, cubical = 0;
    char* report = nullptr;
    if (auto s = fdf_mesh_validate(mesh.m, &manifold, &cubical, &report);
        s != FDF_OK)
      return die("validate", s);
    std::printf("%s", report);
    fdf_string_free(report);
    return (manifold && cubical) ? 0 : 2;
  }

  if (cmd_subdivide->parsed()) {
    MeshHandle mesh;
    if (int rc = load_mesh_arg(opts, mesh)) return rc;
    fdf_forman* fc = nullptr;
    if (auto s = fdf_forman_build(mesh.m, &fc); s != FDF_OK)
      return die("subdivide", s);
    int counts[4] = {0, 0, 0, 0};
    fdf_forman_counts(fc, counts);
    std::printf("K cells: %d %d %d %d\n", counts[0], counts[1], counts[2],
                counts[3]);
    const std::string mesh_out = out_path(opts.out, "k.pmesh");
    const std::string pairs_out = out_path(opts.out, "k.pairs");
    if (auto s = fdf_forman_save(fc, mesh_out.c_str(), pairs_out.c_str());
        s != FDF_OK) {
      fdf_forman_free(fc);
      return die("writing subdivision", s);
    }
    std::printf("wrote %s and %s\n", mesh_out.c_str(), pairs_out.c_str());
    fdf_forman_free(fc);
    return 0;
  }

  if (cmd_betti->parsed()) {
    MeshHandle mesh;
    if (int rc = load_mesh_arg(opts, mesh)) return rc;
    int betti[4] = {0, 0, 0, 0};
    int len = 0;
    if (auto s = fdf_mesh_betti(mesh.m, betti, &len); s != FDF_OK)
      return die("betti", s);
    for (int i = 0; i < len; ++i)
      std::printf("%s%d", i ? "," : "", betti[i]);
    std::printf("\n");
    if (!coo_dump.empty()) {
      int dim = 0;
      fdf_mesh_dim(mesh.m, &dim);
      for (int p = 1; p <= dim; ++p) {
        const std::string path = coo_dump + "_boundary" + std::to_string(p) + ".txt";
        if (auto s = fdf_mesh_boundary_coo(mesh.m, p, path.c_str()); s != FDF_OK)
          return die("boundary export", s);
      }
    }
    return 0;
  }

  if (cmd_hodge->parsed()) {
    MeshHandle mesh;
    if (int rc = load_mesh_arg(opts, mesh)) return rc;
    const int mode = opts.curvature == "trivial" ? 0 : 1;
    char* report = nullptr;
    int ok = 0;
    if (auto s = fdf_hodge_check(mesh.m, mode, &report, &ok); s != FDF_OK)
      return die("hodge-check", s);
    std::printf("%s", report);
    fdf_string_free(report);
    return ok ? 0 : 2;
  }

  if (cmd_solve->parsed() || cmd_alpha->parsed()) {
    ConfigHandle cfg;
    if (int rc = prepare_config(opts, cfg.c)) return rc;
    fdf_solve_result* res = nullptr;
    if (auto s = fdf_solve(cfg.c, &res); s != FDF_OK) return die("solve", s);
    double residual = 0, alpha_eff = 0;
    fdf_result_residual(res, &residual);
    fdf_result_alpha_eff(res, &alpha_eff);
    int nflux = 0;
    fdf_result_flux_count(res, &nflux);
    std::printf("residual %.3e\n", residual);
    for (int i = 0; i < nflux; ++i) {
      double total = 0, by_class[3] = {0, 0, 0};
      fdf_result_flux(res, i, &total, by_class);
      std::printf("flux[%d] total %.6f (node-edge %.6f, edge-face %.6f, "
                  "face-volume %.6f)\n",
                  i, total, by_class[0], by_class[1], by_class[2]);
    }
    std::printf("alpha_eff %.6f\n", alpha_eff);
    const std::string flux_csv = out_path(opts.out, "flux.csv");
    if (auto s = fdf_result_write_flux_csv(res, flux_csv.c_str()); s != FDF_OK) {
      fdf_result_free(res);
      return die("writing flux csv", s);
    }
    if (cmd_solve->parsed()) {
      const std::string nodes_csv = out_path(opts.out, "nodes.csv");
      if (auto s = fdf_result_write_nodes_csv(res, nodes_csv.c_str());
          s != FDF_OK) {
        fdf_result_free(res);
        return die("writing nodes csv", s);
      }
      std::printf("wrote %s and %s\n", nodes_csv.c_str(), flux_csv.c_str());
    } else {
      std::printf("wrote %s\n", flux_csv.c_str());
    }
    fdf_result_free(res);
    return 0;
  }

  if (cmd_percolate->parsed()) {
    ConfigHandle cfg;
    if (int rc = prepare_config(opts, cfg.c)) return rc;
    fdf_curve* curve = nullptr;
    if (auto s = fdf_percolate(cfg.c, &curve); s != FDF_OK)
      return die("percolate", s);
    const std::string csv = out_path(opts.out, "percolation.csv");
    if (auto s = fdf_curve_write_csv(curve, csv.c_str()); s != FDF_OK) {
      fdf_curve_free(curve);
      return die("writing percolation csv", s);
    }
    int n = 0;
    fdf_curve_size(curve, &n);
    std::printf("wrote %s (%d fractions)\n", csv.c_str(), n);
    fdf_curve_free(curve);
    return 0;
  }

  return 1;
}
