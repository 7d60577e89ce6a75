#pragma once

#include <cstdint>
#include <memory>

#include "diffusion.hpp"

namespace fdf {

/// Deterministic counter-based generator: every draw is a pure function of
/// (seed, path, counter), so parallel paths reproduce bit-identically.
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t draw(std::uint64_t path, std::uint64_t counter) const {
    return mix(mix(mix(seed) ^ path) ^ counter);
  }
};

/// Uniform random permutation of {0..n-1} for one Monte Carlo path.
std::vector<int> path_permutation(const CounterRng& rng, std::uint64_t path, int n);

enum class InclusionKind { GNP, CNT };

struct InclusionStudy {
  InclusionKind kind = InclusionKind::GNP;
  double matrix_alpha = 1e-10;
  double inclusion_alpha = 1.0;
  int fractions = 51; // evenly spaced points on [0, 1]
  int paths = 200;
  std::uint64_t seed = 0;
};

/// Diffusivity field for a set of selected inclusion cells: matrix value
/// everywhere, inclusion value on the K-edges carried by the inclusions
/// (overlaps take the maximum). GNP inclusions are M 2-cells and cover the
/// K-edges inside the face and along its boundary edges; CNT inclusions are
/// M 1-cells and cover the K-edges along the edge.
DiffusivityAssignment assign_inclusions(const FormanComplex& fc, InclusionKind kind,
                                        const std::vector<int>& selected,
                                        double matrix_alpha = 1e-10,
                                        double inclusion_alpha = 1.0);

struct PercolationPoint {
  double fraction = 0.0;
  double cumulative_measure = 0.0; // mean over paths (area for GNP, length for CNT)
  double mean_alpha_eff = 0.0;
  double std_alpha_eff = 0.0;
  int n_failed = 0;
};

struct PercolationCurve {
  std::vector<PercolationPoint> points;
  // per-path curves, points x paths, NaN where the solve failed
  Eigen::MatrixXd samples;
};

/// Runs the Monte Carlo sweep: for each path a random permutation of the
/// candidate M-cells, inclusions added successively per fraction, steady
/// solve and alpha_eff recorded. u=1 on the `top` surface, u=0 on `bottom`,
/// zero flux elsewhere.
PercolationCurve percolation_sweep(std::shared_ptr<const MetricContext> mc,
                                   const InclusionStudy& study,
                                   const PlaneSurface& bottom,
                                   const PlaneSurface& top, double solver_tol = 1e-10,
                                   int threads = 1);

} // namespace fdf
