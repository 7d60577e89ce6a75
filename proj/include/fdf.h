/* formandfc C API: combinatorial differential forms on polytopal meshes,
 * Forman subdivision, curvature-weighted metric operators, and a
 * dimension-aware diffusion solver.
 *
 * All functions return FDF_OK on success; on failure they return an error
 * code and fdf_last_error() gives a human-readable message for the calling
 * thread. Handles are opaque and must be released with the matching _free.
 */
#ifndef FDF_H
#define FDF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FDF_API __declspec(dllexport)
#else
#define FDF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdf_status {
  FDF_OK = 0,
  FDF_ERR_IO = 1,
  FDF_ERR_PARSE = 2,
  FDF_ERR_INVALID_MESH = 3,
  FDF_ERR_NONORIENTABLE = 4,
  FDF_ERR_NONCUBICAL = 5,
  FDF_ERR_DEGENERATE = 6,
  FDF_ERR_SOLVER = 7,
  FDF_ERR_BADARG = 8,
  FDF_ERR_CONFLICT = 9,
  FDF_ERR_INTERNAL = 10
} fdf_status;

typedef struct fdf_mesh fdf_mesh;
typedef struct fdf_forman fdf_forman;
typedef struct fdf_config fdf_config;
typedef struct fdf_solve_result fdf_solve_result;
typedef struct fdf_curve fdf_curve;

FDF_API const char* fdf_version(void);

/* Message for the last failure on this thread. Valid until the next call. */
FDF_API const char* fdf_last_error(void);

FDF_API void fdf_string_free(char* s);

/* ---- meshes ---- */

/* Loads a mesh file (.tess or the polymesh interchange format). */
FDF_API fdf_status fdf_mesh_load(const char* path, fdf_mesh** out);

/* n^3 regular grid of the unit cube. */
FDF_API fdf_status fdf_mesh_grid(int n, fdf_mesh** out);

/* Either a path or "grid:N". */
FDF_API fdf_status fdf_mesh_source(const char* source, fdf_mesh** out);

FDF_API fdf_status fdf_mesh_save(const fdf_mesh* mesh, const char* path);
FDF_API fdf_status fdf_mesh_dim(const fdf_mesh* mesh, int* dim);
FDF_API fdf_status fdf_mesh_counts(const fdf_mesh* mesh, int counts[4]);

/* manifold/cubical flags plus a printable report; report may be NULL. */
FDF_API fdf_status fdf_mesh_validate(const fdf_mesh* mesh, int* manifold_like,
                                     int* cubical_corners, char** report);

/* Betti numbers b_0..b_dim; *len receives dim+1. */
FDF_API fdf_status fdf_mesh_betti(const fdf_mesh* mesh, int betti[4], int* len);

/* Writes the signed boundary matrix of dimension p as coordinate-list text. */
FDF_API fdf_status fdf_mesh_boundary_coo(const fdf_mesh* mesh, int p,
                                         const char* path);

FDF_API void fdf_mesh_free(fdf_mesh* mesh);

/* ---- Forman subdivision ---- */

FDF_API fdf_status fdf_forman_build(const fdf_mesh* mesh, fdf_forman** out);
FDF_API fdf_status fdf_forman_counts(const fdf_forman* fc, int counts[4]);

/* Writes K in the interchange format plus a sidecar table mapping K-cells to
 * M-cell pairs ("kdim kindex q iq r ir" per line). pairs_path may be NULL. */
FDF_API fdf_status fdf_forman_save(const fdf_forman* fc, const char* mesh_path,
                                   const char* pairs_path);

FDF_API void fdf_forman_free(fdf_forman* fc);

/* Hodge-theory self-check: harmonic dimensions vs Betti numbers and the
 * orthogonal decomposition residuals. curvature_mode: 0 trivial, 1 curvature. */
FDF_API fdf_status fdf_hodge_check(const fdf_mesh* mesh, int curvature_mode,
                                   char** report, int* ok);

/* ---- runs ---- */

FDF_API fdf_status fdf_config_new(fdf_config** out);
FDF_API fdf_status fdf_config_load(fdf_config* cfg, const char* path);

/* Same keys as the config file, e.g. fdf_config_set(cfg, "mesh", "grid:8"). */
FDF_API fdf_status fdf_config_set(fdf_config* cfg, const char* key,
                                  const char* value);
FDF_API void fdf_config_free(fdf_config* cfg);

FDF_API fdf_status fdf_solve(const fdf_config* cfg, fdf_solve_result** out);

FDF_API fdf_status fdf_result_residual(const fdf_solve_result* res, double* out);
FDF_API fdf_status fdf_result_alpha_eff(const fdf_solve_result* res, double* out);
FDF_API fdf_status fdf_result_flux_count(const fdf_solve_result* res, int* out);

/* Flux through the i-th Dirichlet plane, with the per-class breakdown
 * (node-edge, edge-face, face-volume). Any output may be NULL. */
FDF_API fdf_status fdf_result_flux(const fdf_solve_result* res, int i,
                                   double* total, double by_class[3]);

FDF_API fdf_status fdf_result_write_nodes_csv(const fdf_solve_result* res,
                                              const char* path);
FDF_API fdf_status fdf_result_write_flux_csv(const fdf_solve_result* res,
                                             const char* path);
FDF_API void fdf_result_free(fdf_solve_result* res);

FDF_API fdf_status fdf_percolate(const fdf_config* cfg, fdf_curve** out);
FDF_API fdf_status fdf_curve_size(const fdf_curve* curve, int* out);
FDF_API fdf_status fdf_curve_point(const fdf_curve* curve, int i, double* fraction,
                                   double* cumulative_measure, double* mean,
                                   double* stddev, int* n_failed);
FDF_API fdf_status fdf_curve_write_csv(const fdf_curve* curve, const char* path);
FDF_API void fdf_curve_free(fdf_curve* curve);

#ifdef __cplusplus
}
#endif

#endif /* FDF_H */
