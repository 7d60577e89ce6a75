#pragma once

#include <memory>

#include "mesh.hpp"

namespace fdf {

/// n x n x n grid of axis-aligned cubes tiling [lo, hi]^3 (unit cube by
/// default), shared faces identified.
std::shared_ptr<const Mesh> regular_grid(int n, double lo = 0.0, double hi = 1.0);

/// Partition of the interval [a, b] into n equal edges, embedded on the
/// x-axis of the plane.
std::shared_ptr<const Mesh> interval_mesh(int n, double a = 0.0, double b = 1.0);

} // namespace fdf
