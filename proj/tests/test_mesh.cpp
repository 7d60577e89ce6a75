#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "mesh_io.hpp"

using namespace fdf;

TEST_CASE("unit square builds with full poset") {
  auto m = fixtures::unit_square();
  CHECK(m->dim() == 2);
  CHECK(m->count(0) == 4);
  CHECK(m->count(1) == 4);
  CHECK(m->count(2) == 1);
  CHECK(m->faces(2, 0, 0).size() == 4);
  CHECK(m->cofaces(0, 0, 2).size() == 1);
  CHECK(m->measure(2, 0) == doctest::Approx(1.0));
}

TEST_CASE("two triangles sharing an edge") {
  auto m = fixtures::two_triangles();
  CHECK(m->count(0) == 4);
  CHECK(m->count(1) == 5);
  CHECK(m->count(2) == 2);
  // the diagonal edge has two cofaces
  CHECK(m->cofaces(1, 4, 2).size() == 2);
  auto rep = m->validate();
  CHECK(rep.is_manifold_like);
}

TEST_CASE("dangling hyperface id is rejected") {
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 99}};
  CHECK_THROWS_WITH_AS(Mesh::build(2, std::move(verts), t),
                       doctest::Contains("missing"), Error);
}

TEST_CASE("diamond violation is rejected") {
  // a "face" listing three edges that do not close a polygon at each node
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 3}};   // open chain
  t[2] = {{0, 1, 2}};
  try {
    Mesh::build(2, std::move(verts), t);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DiamondViolation);
  }
}

TEST_CASE("measures: lengths, areas, volumes") {
  auto tet = fixtures::tetrahedron(true);
  CHECK(tet->measure(3, 0) == doctest::Approx(1.0 / (6.0 * std::sqrt(2.0)))
                                  .epsilon(1e-12));
  auto cube = regular_grid(1);
  CHECK(cube->measure(3, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cube->measure(2, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cube->measure(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cube->measure(0, 0) == 1.0);
}

TEST_CASE("non-planar quad area equals the two-triangle sum for both diagonals") {
  const double eps = 1e-4;
  auto m = fixtures::skew_quad(eps);
  const Eigen::Vector3d v0(0, 0, 0), v1(1, 0, 0), v2(1, 1, eps), v3(0, 1, 0);
  auto tri_area = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c) {
    return 0.5 * (b - a).cross(c - a).norm();
  };
  const double diag02 = tri_area(v0, v1, v2) + tri_area(v0, v2, v3);
  const double diag13 = tri_area(v0, v1, v3) + tri_area(v1, v2, v3);
  CHECK(std::abs(diag02 - diag13) < 1e-12); // oracle self-consistency
  CHECK(m->measure(2, 0) == doctest::Approx(diag02).epsilon(1e-12));
  // and it genuinely took the non-planar branch: area exceeds the flat square
  CHECK(m->measure(2, 0) > 1.0);
}

TEST_CASE("grid cell counts and total measure") {
  auto m = regular_grid(2);
  CHECK(m->count(0) == 27);
  CHECK(m->count(1) == 54);
  CHECK(m->count(2) == 36);
  CHECK(m->count(3) == 8);
  double vol = 0;
  for (int i = 0; i < m->count(3); ++i) vol += m->measure(3, i);
  CHECK(vol == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("centroids are vertex means") {
  auto m = fixtures::two_triangles();
  const Eigen::Vector3d c = m->centroid(2, 0);
  CHECK(c.x() == doctest::Approx(2.0 / 3.0));
  CHECK(c.y() == doctest::Approx(1.0 / 3.0));
  auto grid = regular_grid(1);
  CHECK((grid->centroid(3, 0) - Eigen::Vector3d(0.5, 0.5, 0.5)).norm() < 1e-15);
  auto iv = interval_mesh(1, 0.0, 2.0);
  CHECK(iv->centroid(1, 0).x() == doctest::Approx(1.0));
}

TEST_CASE("validation: cubes are cubical, pyramids are not") {
  auto grid = regular_grid(2);
  auto rep = grid->validate();
  CHECK(rep.is_manifold_like);
  CHECK(rep.has_cubical_corners);
  CHECK(rep.failures.empty());

  auto pyr = fixtures::square_pyramid();
  auto prep = pyr->validate();
  CHECK(prep.is_manifold_like);
  CHECK(!prep.has_cubical_corners);
  bool found = false;
  for (const auto& f : prep.failures)
    if (f.rule == "cubical-corners") found = true;
  CHECK(found);
}

TEST_CASE("validation: bow-tie fails 0-regularity") {
  auto rep = fixtures::bowtie()->validate();
  CHECK(!rep.is_manifold_like);
  CHECK(!rep.is_p_regular[0]);
}

TEST_CASE("boundary submesh") {
  SUBCASE("cube surface is closed") {
    auto cube = regular_grid(1);
    auto surf = cube->boundary_submesh();
    CHECK(surf->dim() == 2);
    CHECK(surf->count(2) == 6);
    CHECK(surf->count(1) == 12);
    CHECK(surf->count(0) == 8);
    CHECK(surf->boundary_hyperfaces().empty());
    auto surf2 = surf->boundary_submesh();
    CHECK(surf2->dim() == -1); // empty mesh
  }
  SUBCASE("torus has no boundary") {
    auto t = fixtures::torus();
    auto b = t->boundary_submesh();
    CHECK(b->dim() == -1);
  }
  SUBCASE("interval boundary is its endpoints") {
    auto iv = interval_mesh(2);
    auto b = iv->boundary_submesh();
    CHECK(b->dim() == 0);
    CHECK(b->count(0) == 2);
  }
}

TEST_CASE("angle measures") {
  auto sq = fixtures::unit_square();
  CHECK(sq->angle_measure(2, 0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  auto cube = regular_grid(1);
  for (int v = 0; v < 8; ++v)
    CHECK(cube->angle_measure(3, 0, v) == doctest::Approx(0.125).epsilon(1e-12));
  auto iv = interval_mesh(2);
  CHECK(iv->angle_measure(1, 0, 0) == 0.5);
  CHECK_THROWS_AS(sq->angle_measure(2, 0, 2) + sq->angle_measure(1, 0, 2),
                  Error); // node 2 not on edge 0
}

TEST_CASE("interior angle fractions sum to one") {
  auto grid = regular_grid(2);
  // center node of the 2x2x2 grid is interior: index (1,1,1) -> 13
  const int center = (1 * 3 + 1) * 3 + 1;
  double total = 0;
  for (int c : grid->cofaces(0, center, 3))
    total += grid->angle_measure(3, c, center);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(grid->node_curvature(center) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("node curvature on the cube domain: face 2, edge 4, corner 8") {
  auto grid = regular_grid(2);
  auto vid = [](int i, int j, int k) { return (k * 3 + j) * 3 + i; };
  CHECK(grid->node_curvature(vid(1, 1, 0)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(grid->node_curvature(vid(1, 0, 0)) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(grid->node_curvature(vid(0, 0, 0)) == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("1D boundary node curvature is 2") {
  auto iv = interval_mesh(2);
  CHECK(iv->node_curvature(0) == doctest::Approx(2.0));
  CHECK(iv->node_curvature(1) == doctest::Approx(1.0));
}

TEST_CASE("solid angle of a distorted corner against a Monte Carlo oracle") {
  // skewed tetrahedron corner at the origin
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0.1, 0}, {0.2, 1, -0.1}, {0.1, 0.3, 1}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  t[2] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}};
  t[3] = {{0, 1, 2, 3}};
  auto m = Mesh::build(3, std::move(verts), t);

  // Monte Carlo: fraction of directions inside the cone spanned by the edges.
  const Eigen::Vector3d u1 = m->vertex(1), u2 = m->vertex(2), u3 = m->vertex(3);
  Eigen::Matrix3d E;
  E.col(0) = u1;
  E.col(1) = u2;
  E.col(2) = u3;
  const Eigen::Matrix3d Einv = E.inverse();
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  const int samples = 2000000;
  int inside = 0;
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
    const Eigen::Vector3d c = Einv * dir;
    if (c.minCoeff() >= 0) ++inside;
  }
  const double mc = static_cast<double>(inside) / samples;
  const double exact = m->angle_measure(3, 0, 0);
  CHECK(exact == doctest::Approx(mc).epsilon(0.02));
}
