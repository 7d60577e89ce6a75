#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace fdf::fixtures {

std::shared_ptr<const Mesh> two_triangles() {
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  t[2] = {{0, 1, 4}, {2, 3, 4}};
  return Mesh::build(2, std::move(verts), t);
}

std::shared_ptr<const Mesh> unit_square() {
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  t[2] = {{0, 1, 2, 3}};
  return Mesh::build(2, std::move(verts), t);
}

std::shared_ptr<const Mesh> tetrahedron(bool regular) {
  std::vector<Eigen::Vector3d> verts;
  if (regular) {
    verts = {{0, 0, 0},
             {1, 0, 0},
             {0.5, std::sqrt(3.0) / 2.0, 0},
             {0.5, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0)}};
  } else {
    verts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  }
  Mesh::Tables t;
  t[1] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  t[2] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}};
  t[3] = {{0, 1, 2, 3}};
  return Mesh::build(3, std::move(verts), t);
}

std::shared_ptr<const Mesh> square_pyramid() {
  std::vector<Eigen::Vector3d> verts = {
      {-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}, {0, 0, 1}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
  t[2] = {{0, 1, 2, 3}, {0, 4, 5}, {1, 5, 6}, {2, 6, 7}, {3, 7, 4}};
  t[3] = {{0, 1, 2, 3, 4}};
  return Mesh::build(3, std::move(verts), t);
}

std::shared_ptr<const Mesh> annulus() {
  // 4x4 node lattice, 3x3 cells minus the center one.
  std::vector<Eigen::Vector3d> verts;
  auto vid = [](int i, int j) { return j * 4 + i; };
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) verts.emplace_back(i, j, 0);
  Mesh::Tables t;
  std::vector<std::vector<int>> edges;
  auto ex = [&](int i, int j) { return j * 3 + i; };          // 12 x-edges
  auto ey = [&](int i, int j) { return 12 + j * 4 + i; };     // 12 y-edges
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i) edges.push_back({vid(i, j), vid(i + 1, j)});
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) edges.push_back({vid(i, j), vid(i, j + 1)});
  t[1] = edges;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      if (i == 1 && j == 1) continue;
      t[2].push_back({ex(i, j), ex(i, j + 1), ey(i, j), ey(i + 1, j)});
    }
  }
  return Mesh::build(2, std::move(verts), t);
}

std::shared_ptr<const Mesh> torus(int nu, int nv, double R, double r) {
  const double tau = 2.0 * std::numbers::pi;
  std::vector<Eigen::Vector3d> verts;
  auto vid = [&](int i, int j) { return ((i % nu + nu) % nu) * nv + ((j % nv + nv) % nv); };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double u = tau * i / nu, v = tau * j / nv;
      verts.emplace_back((R + r * std::cos(v)) * std::cos(u),
                         (R + r * std::cos(v)) * std::sin(u), r * std::sin(v));
    }
  }
  Mesh::Tables t;
  auto eu = [&](int i, int j) { return ((i % nu + nu) % nu) * nv + (j % nv + nv) % nv; };
  auto ev = [&](int i, int j) { return nu * nv + eu(i, j); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      t[1].push_back({vid(i, j), vid(i + 1, j)});
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      t[1].push_back({vid(i, j), vid(i, j + 1)});
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      t[2].push_back({eu(i, j), eu(i, j + 1), ev(i, j), ev(i + 1, j)});
  return Mesh::build(3, std::move(verts), t);
}

std::shared_ptr<const Mesh> moebius(int n) {
  const double tau = 2.0 * std::numbers::pi;
  const double R = 2.0, w = 0.5;
  std::vector<Eigen::Vector3d> verts(2 * n);
  for (int i = 0; i < n; ++i) {
    const double th = tau * i / n;
    for (int s = 0; s < 2; ++s) {
      const double ww = s == 0 ? w : -w;
      verts[2 * i + s] =
          Eigen::Vector3d((R + ww * std::cos(th / 2)) * std::cos(th),
                          (R + ww * std::cos(th / 2)) * std::sin(th),
                          ww * std::sin(th / 2));
    }
  }
  auto a = [&](int i) { return 2 * i; };
  auto b = [&](int i) { return 2 * i + 1; };
  Mesh::Tables t;
  // rungs 0..n-1, then a-rails, then b-rails
  for (int i = 0; i < n; ++i) t[1].push_back({a(i), b(i)});
  for (int i = 0; i < n; ++i)
    t[1].push_back(i + 1 < n ? std::vector<int>{a(i), a(i + 1)}
                             : std::vector<int>{a(i), b(0)});
  for (int i = 0; i < n; ++i)
    t[1].push_back(i + 1 < n ? std::vector<int>{b(i), b(i + 1)}
                             : std::vector<int>{b(i), a(0)});
  for (int i = 0; i < n; ++i) {
    const int rung_next = (i + 1) % n;
    t[2].push_back({i, n + i, rung_next, 2 * n + i});
  }
  return Mesh::build(3, std::move(verts), t);
}

std::shared_ptr<const Mesh> bowtie() {
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {-1, -1, 0}, {-1, 1, 0}, {1, -1, 0}, {1, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
  t[2] = {{0, 1, 2}, {3, 4, 5}};
  return Mesh::build(2, std::move(verts), t);
}

std::shared_ptr<const Mesh> skew_quad(double eps) {
  std::vector<Eigen::Vector3d> verts = {
      {0, 0, 0}, {1, 0, 0}, {1, 1, eps}, {0, 1, 0}};
  Mesh::Tables t;
  t[1] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  t[2] = {{0, 1, 2, 3}};
  return Mesh::build(3, std::move(verts), t);
}

std::shared_ptr<const OrientedComplex> oriented(std::shared_ptr<const Mesh> m) {
  return OrientedComplex::orient_compatibly(std::move(m));
}

std::shared_ptr<const FormanComplex> forman_of(std::shared_ptr<const Mesh> m) {
  return FormanComplex::build(oriented(std::move(m)));
}

} // namespace fdf::fixtures
