#pragma once

#include <memory>

#include "forman.hpp"
#include "meshgen.hpp"

namespace fdf::fixtures {

/// Unit square split into two triangles along the diagonal (4 nodes,
/// 5 edges, 2 faces). Edge 4 is the shared diagonal.
std::shared_ptr<const Mesh> two_triangles();

/// Unit square as a single 2-cell.
std::shared_ptr<const Mesh> unit_square();

/// Tetrahedron; regular with unit edges, or the corner simplex.
std::shared_ptr<const Mesh> tetrahedron(bool regular = false);

/// Square pyramid: apex meets four edges (non-cubical corner).
std::shared_ptr<const Mesh> square_pyramid();

/// Square ring of 8 unit quads (annulus, Betti 1,1,0).
std::shared_ptr<const Mesh> annulus();

/// Quad torus of revolution, nu x nv cells (closed surface, Betti 1,2,1).
std::shared_ptr<const Mesh> torus(int nu = 8, int nv = 8, double R = 2.0,
                                  double r = 0.75);

/// Moebius band of n quads (non-orientable).
std::shared_ptr<const Mesh> moebius(int n = 6);

/// Two triangles sharing only a node (fails 0-regularity).
std::shared_ptr<const Mesh> bowtie();

/// Single non-planar quadrilateral (0,0,0),(1,0,0),(1,1,eps),(0,1,0).
std::shared_ptr<const Mesh> skew_quad(double eps);

std::shared_ptr<const OrientedComplex> oriented(std::shared_ptr<const Mesh> m);
std::shared_ptr<const FormanComplex> forman_of(std::shared_ptr<const Mesh> m);

} // namespace fdf::fixtures
