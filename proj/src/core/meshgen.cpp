#include "meshgen.hpp"

namespace fdf {

std::shared_ptr<const Mesh> regular_grid(int n, double lo, double hi) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "grid size must be >= 1");
  if (!(hi > lo)) fail(ErrorKind::InvalidArgument, "grid bounds must be increasing");
  const int nv = n + 1;
  const double h = (hi - lo) / n;
  auto vid = [&](int i, int j, int k) { return (k * nv + j) * nv + i; };

  std::vector<Eigen::Vector3d> verts;
  verts.reserve(nv * nv * nv);
  for (int k = 0; k < nv; ++k)
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < nv; ++i)
        verts.emplace_back(lo + i * h, lo + j * h, lo + k * h);

  // Edge ids: x-edges, then y-edges, then z-edges.
  const int nex = n * nv * nv;
  auto ex = [&](int i, int j, int k) { return (k * nv + j) * n + i; };
  auto ey = [&](int i, int j, int k) { return nex + (k * n + j) * nv + i; };
  auto ez = [&](int i, int j, int k) { return 2 * nex + (k * nv + j) * nv + i; };

  Mesh::Tables tables;
  tables[1].resize(3 * nex);
  for (int k = 0; k < nv; ++k)
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < n; ++i)
        tables[1][ex(i, j, k)] = {vid(i, j, k), vid(i + 1, j, k)};
  for (int k = 0; k < nv; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < nv; ++i)
        tables[1][ey(i, j, k)] = {vid(i, j, k), vid(i, j + 1, k)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < nv; ++i)
        tables[1][ez(i, j, k)] = {vid(i, j, k), vid(i, j, k + 1)};

  // Face ids: xy, then yz, then xz.
  const int nfxy = n * n * nv;
  auto fxy = [&](int i, int j, int k) { return (k * n + j) * n + i; };
  auto fyz = [&](int i, int j, int k) { return nfxy + (k * n + j) * nv + i; };
  auto fxz = [&](int i, int j, int k) { return 2 * nfxy + (k * nv + j) * n + i; };
  tables[2].resize(3 * nfxy);
  for (int k = 0; k < nv; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        tables[2][fxy(i, j, k)] = {ex(i, j, k), ex(i, j + 1, k), ey(i, j, k),
                                   ey(i + 1, j, k)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < nv; ++i)
        tables[2][fyz(i, j, k)] = {ey(i, j, k), ey(i, j, k + 1), ez(i, j, k),
                                   ez(i, j + 1, k)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < n; ++i)
        tables[2][fxz(i, j, k)] = {ex(i, j, k), ex(i, j, k + 1), ez(i, j, k),
                                   ez(i + 1, j, k)};

  tables[3].resize(n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        tables[3][(k * n + j) * n + i] = {fxy(i, j, k),     fxy(i, j, k + 1),
                                          fyz(i, j, k),     fyz(i + 1, j, k),
                                          fxz(i, j, k),     fxz(i, j + 1, k)};

  return Mesh::build(3, std::move(verts), tables);
}

std::shared_ptr<const Mesh> interval_mesh(int n, double a, double b) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "interval needs >= 1 edge");
  if (!(b > a)) fail(ErrorKind::InvalidArgument, "interval bounds must be increasing");
  std::vector<Eigen::Vector3d> verts;
  const double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) verts.emplace_back(a + i * h, 0.0, 0.0);
  Mesh::Tables tables;
  tables[1].resize(n);
  for (int i = 0; i < n; ++i) tables[1][i] = {i, i + 1};
  return Mesh::build(2, std::move(verts), tables);
}

} // namespace fdf
