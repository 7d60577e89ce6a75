#include "mesh.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace fdf {

namespace {

constexpr double kDegenerateRel = 1e-12;
constexpr double kPlanarityRel = 1e-9;

std::string cell_name(int p, int i) {
  std::ostringstream os;
  os << "(" << p << "," << i << ")";
  return os.str();
}

Eigen::Vector3d newell_normal(std::span<const int> loop,
                              const std::vector<Eigen::Vector3d>& x) {
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  const int k = static_cast<int>(loop.size());
  for (int i = 0; i < k; ++i) {
    const Eigen::Vector3d& a = x[loop[i]];
    const Eigen::Vector3d& b = x[loop[(i + 1) % k]];
    n += a.cross(b);
  }
  return n;
}

} // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFace: return "MissingFace";
    case ErrorKind::DiamondViolation: return "DiamondViolation";
    case ErrorKind::DegenerateCell: return "DegenerateCell";
    case ErrorKind::NotIncident: return "NotIncident";
    case ErrorKind::NotHyperface: return "NotHyperface";
    case ErrorKind::NumericallyDegenerate: return "NumericallyDegenerate";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::NonCubicalCorners: return "NonCubicalCorners";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConflictingBC: return "ConflictingBC";
    case ErrorKind::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorKind::SolverDivergence: return "SolverDivergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedSection: return "UnsupportedSection";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

int Mesh::total_cells() const {
  int n = 0;
  for (int p = 0; p <= kMaxDim; ++p) n += counts_[p];
  return n;
}

std::span<const int> Mesh::hyperfaces(int p, int i) const {
  return hyperfaces_[p][i];
}

std::span<const int> Mesh::faces(int p, int i, int r) const {
  return faces_[p][r][i];
}

std::span<const int> Mesh::cofaces(int p, int i, int q) const {
  return cofaces_[p][q][i];
}

std::shared_ptr<const Mesh> Mesh::build(int embedding_dim,
                                        std::vector<Eigen::Vector3d> vertices,
                                        const Tables& cells) {
  if (embedding_dim < 1 || embedding_dim > 3)
    fail(ErrorKind::InvalidArgument, "embedding dimension must be 1, 2 or 3");

  auto mesh = std::shared_ptr<Mesh>(new Mesh());
  mesh->embedding_dim_ = embedding_dim;
  mesh->vertices_ = std::move(vertices);
  mesh->counts_[0] = static_cast<int>(mesh->vertices_.size());
  for (int p = 1; p <= kMaxDim; ++p)
    mesh->counts_[p] = static_cast<int>(cells[p].size());

  mesh->dim_ = 0;
  for (int p = kMaxDim; p >= 1; --p) {
    if (mesh->counts_[p] > 0) {
      mesh->dim_ = p;
      break;
    }
  }
  if (mesh->counts_[0] == 0) {
    mesh->dim_ = -1; // empty mesh (e.g. boundary of a closed mesh)
    return mesh;
  }
  for (int p = mesh->dim_ + 1; p <= kMaxDim; ++p) {
    if (!cells[p].empty())
      fail(ErrorKind::InvalidArgument, "cell table above topological dimension");
  }

  mesh->build_poset(cells);
  mesh->build_loops();
  mesh->build_geometry();
  return mesh;
}

void Mesh::build_poset(const Tables& cells) {
  // Hyperface lists in input order, with existence checks.
  for (int p = 1; p <= dim_; ++p) {
    std::vector<std::vector<int>> rows = cells[p];
    for (int i = 0; i < counts_[p]; ++i) {
      if (p == 1 && rows[i].size() != 2)
        fail(ErrorKind::MissingFace,
             "edge " + cell_name(p, i) + " must list exactly two nodes");
      if (p >= 2 && rows[i].size() < static_cast<std::size_t>(p + 1))
        fail(ErrorKind::MissingFace,
             "cell " + cell_name(p, i) + " lists too few hyperfaces");
      for (int f : rows[i]) {
        if (f < 0 || f >= counts_[p - 1])
          fail(ErrorKind::MissingFace,
               "cell " + cell_name(p, i) + " references missing " +
                   std::to_string(p - 1) + "-cell " + std::to_string(f));
      }
    }
    hyperfaces_[p] = IncidenceList::from_lists(rows);
  }

  // Downward closure: sorted r-faces at every gap.
  for (int p = 1; p <= dim_; ++p) {
    {
      std::vector<std::vector<int>> rows(counts_[p]);
      for (int i = 0; i < counts_[p]; ++i) {
        auto hf = hyperfaces_[p][i];
        rows[i].assign(hf.begin(), hf.end());
        std::sort(rows[i].begin(), rows[i].end());
        rows[i].erase(std::unique(rows[i].begin(), rows[i].end()), rows[i].end());
      }
      faces_[p][p - 1] = IncidenceList::from_lists(rows);
    }
    for (int r = p - 2; r >= 0; --r) {
      std::vector<std::vector<int>> rows(counts_[p]);
      std::vector<int> acc;
      for (int i = 0; i < counts_[p]; ++i) {
        acc.clear();
        for (int f : faces_[p][p - 1][i]) {
          auto sub = faces_[p - 1][r][f];
          acc.insert(acc.end(), sub.begin(), sub.end());
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        rows[i] = acc;
      }
      faces_[p][r] = IncidenceList::from_lists(rows);
    }
  }

  // Upward closure by transposition.
  for (int r = 0; r <= dim_; ++r) {
    for (int p = r + 1; p <= dim_; ++p) {
      std::vector<std::vector<int>> rows(counts_[r]);
      for (int i = 0; i < counts_[p]; ++i) {
        for (int f : faces_[p][r][i]) rows[f].push_back(i);
      }
      for (auto& row : rows) std::sort(row.begin(), row.end());
      cofaces_[r][p] = IncidenceList::from_lists(rows);
    }
  }

  // Diamond property: every (c_p, a_{p-2}) pair has exactly two cells between.
  for (int p = 2; p <= dim_; ++p) {
    for (int i = 0; i < counts_[p]; ++i) {
      for (int a : faces_[p][p - 2][i]) {
        int between = 0;
        for (int b : faces_[p][p - 1][i]) {
          if (sorted_contains(faces_[p - 1][p - 2][b], a)) ++between;
        }
        if (between != 2)
          fail(ErrorKind::DiamondViolation,
               "cells " + cell_name(p, i) + " and " + cell_name(p - 2, a) +
                   " have " + std::to_string(between) +
                   " intermediate cells (expected 2)");
      }
    }
  }
}

void Mesh::build_loops() {
  if (dim_ < 2) return;
  std::vector<std::vector<int>> loops(counts_[2]);
  for (int i = 0; i < counts_[2]; ++i) {
    auto edges = hyperfaces_[2][i];
    const int k = static_cast<int>(edges.size());
    // node -> incident (edge, other node); diamond guarantees two per node
    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (int e : edges) {
      auto nodes = hyperfaces_[1][e];
      adj[nodes[0]].push_back({e, nodes[1]});
      adj[nodes[1]].push_back({e, nodes[0]});
    }
    int start = adj.begin()->first;
    std::vector<int> loop;
    loop.reserve(k);
    std::set<int> used_edges;
    int cur = start;
    int prev_edge = -1;
    for (int step = 0; step < k; ++step) {
      loop.push_back(cur);
      bool advanced = false;
      for (auto [e, other] : adj[cur]) {
        if (e != prev_edge && !used_edges.count(e)) {
          used_edges.insert(e);
          prev_edge = e;
          cur = other;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        fail(ErrorKind::InvalidGeometry,
             "2-cell " + cell_name(2, i) + " boundary does not chain into a cycle");
    }
    if (cur != start || static_cast<int>(used_edges.size()) != k)
      fail(ErrorKind::InvalidGeometry,
           "2-cell " + cell_name(2, i) + " boundary is not a single cycle");
    loops[i] = loop;
  }
  loops_ = IncidenceList::from_lists(loops);
}

void Mesh::build_geometry() {
  Eigen::Vector3d lo = vertices_[0], hi = vertices_[0];
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  bbox_diagonal_ = (hi - lo).norm();

  for (int p = 0; p <= dim_; ++p) {
    centroids_[p].resize(counts_[p]);
    measures_[p].resize(counts_[p]);
  }
  for (int i = 0; i < counts_[0]; ++i) {
    centroids_[0][i] = vertices_[i];
    measures_[0][i] = 1.0;
  }
  for (int p = 1; p <= dim_; ++p) {
    for (int i = 0; i < counts_[p]; ++i) {
      auto vs = faces_[p][0][i];
      Eigen::Vector3d c = Eigen::Vector3d::Zero();
      for (int v : vs) c += vertices_[v];
      centroids_[p][i] = c / static_cast<double>(vs.size());
    }
  }
  for (int p = 1; p <= dim_; ++p) {
    const double tol =
        kDegenerateRel * std::pow(std::max(bbox_diagonal_, 1e-300), p);
    for (int i = 0; i < counts_[p]; ++i) {
      const double m = cell_measure(p, i);
      if (!(m > tol))
        fail(ErrorKind::DegenerateCell,
             "cell " + cell_name(p, i) + " has measure " + std::to_string(m) +
                 " below tolerance");
      measures_[p][i] = m;
    }
  }
}

// Canonical triangulation of a 2-cell, shared by area and volume so that the
// measures of adjacent cells telescope exactly. Planar polygons are fanned
// from the centroid; non-planar quadrilaterals are split along the diagonal
// through the lowest-index vertex.
static void face_triangles(std::span<const int> loop,
                           const std::vector<Eigen::Vector3d>& x,
                           const Eigen::Vector3d& centroid, double planar_tol,
                           std::vector<std::array<Eigen::Vector3d, 3>>& out) {
  out.clear();
  const int k = static_cast<int>(loop.size());
  if (k == 4) {
    double deviation = 0.0;
    Eigen::Vector3d n = newell_normal(loop, x);
    const double nn = n.norm();
    if (nn > 0) {
      n /= nn;
      for (int i = 0; i < k; ++i)
        deviation = std::max(deviation, std::abs(n.dot(x[loop[i]] - centroid)));
    }
    if (deviation > planar_tol) {
      int m = 0;
      for (int i = 1; i < 4; ++i)
        if (loop[i] < loop[m]) m = i;
      auto at = [&](int j) -> const Eigen::Vector3d& { return x[loop[(m + j) % 4]]; };
      out.push_back({at(0), at(1), at(2)});
      out.push_back({at(0), at(2), at(3)});
      return;
    }
  }
  for (int i = 0; i < k; ++i) {
    out.push_back({centroid, x[loop[i]], x[loop[(i + 1) % k]]});
  }
}

double Mesh::cell_measure(int p, int i) const {
  switch (p) {
    case 1: {
      auto nodes = hyperfaces_[1][i];
      return (vertices_[nodes[1]] - vertices_[nodes[0]]).norm();
    }
    case 2: {
      auto loop = loops_[i];
      std::vector<std::array<Eigen::Vector3d, 3>> tris;
      face_triangles(loop, vertices_, centroids_[2][i],
                     kPlanarityRel * bbox_diagonal_, tris);
      const int k = static_cast<int>(loop.size());
      if (static_cast<int>(tris.size()) == k) {
        // Planar fan: signed vector areas, exact for any simple polygon.
        Eigen::Vector3d area = Eigen::Vector3d::Zero();
        for (const auto& t : tris)
          area += 0.5 * (t[1] - t[0]).cross(t[2] - t[0]);
        return area.norm();
      }
      double a = 0.0;
      for (const auto& t : tris)
        a += 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
      return a;
    }
    case 3: {
      const Eigen::Vector3d o = centroids_[3][i];
      double vol = 0.0;
      std::vector<std::array<Eigen::Vector3d, 3>> tris;
      for (int f : faces_[3][2][i]) {
        auto loop = loops_[f];
        face_triangles(loop, vertices_, centroids_[2][f],
                       kPlanarityRel * bbox_diagonal_, tris);
        const Eigen::Vector3d n = newell_normal(loop, vertices_);
        const double flip = n.dot(centroids_[2][f] - o) < 0 ? -1.0 : 1.0;
        for (const auto& t : tris) {
          vol += flip * (t[0] - o).dot((t[1] - o).cross(t[2] - o)) / 6.0;
        }
      }
      return std::abs(vol);
    }
    default:
      fail(ErrorKind::InvalidArgument, "measure: bad dimension");
  }
}

double Mesh::corner_planar_angle(int cell2, int node) const {
  auto loop = loops_[cell2];
  const int k = static_cast<int>(loop.size());
  int j = -1;
  for (int t = 0; t < k; ++t)
    if (loop[t] == node) { j = t; break; }
  if (j < 0) fail(ErrorKind::NotIncident, "node not on 2-cell");
  Eigen::Vector3d n = newell_normal(loop, vertices_);
  const double nn = n.norm();
  if (nn < kDegenerateRel)
    fail(ErrorKind::NumericallyDegenerate, "2-cell normal vanishes");
  n /= nn;
  const Eigen::Vector3d a_in = vertices_[loop[j]] - vertices_[loop[(j + k - 1) % k]];
  const Eigen::Vector3d a_out = vertices_[loop[(j + 1) % k]] - vertices_[loop[j]];
  const double turn = std::atan2(n.dot(a_in.cross(a_out)), a_in.dot(a_out));
  return std::numbers::pi - turn; // interior angle, reflex corners included
}

double Mesh::corner_solid_angle(int cell3, int node) const {
  // Edges of the cell at the corner, as unit rays.
  std::vector<int> corner_edges;
  for (int e : faces_[3][1][cell3]) {
    auto nodes = hyperfaces_[1][e];
    if (nodes[0] == node || nodes[1] == node) corner_edges.push_back(e);
  }
  const int k = static_cast<int>(corner_edges.size());
  if (k < 3) fail(ErrorKind::NotIncident, "node has fewer than 3 edges in 3-cell");

  std::vector<Eigen::Vector3d> rays(k);
  for (int t = 0; t < k; ++t) {
    auto nodes = hyperfaces_[1][corner_edges[t]];
    const int other = nodes[0] == node ? nodes[1] : nodes[0];
    rays[t] = (vertices_[other] - vertices_[node]).normalized();
  }

  // The link of the corner is a cycle: faces at the corner join edge pairs.
  std::map<int, std::vector<int>> edge_neighbors; // local edge idx -> neighbors
  for (int f : faces_[3][2][cell3]) {
    std::vector<int> locals;
    for (int t = 0; t < k; ++t) {
      if (sorted_contains(faces_[2][1][f], corner_edges[t])) locals.push_back(t);
    }
    if (locals.size() == 2) {
      edge_neighbors[locals[0]].push_back(locals[1]);
      edge_neighbors[locals[1]].push_back(locals[0]);
    } else if (!locals.empty() && sorted_contains(faces_[2][0][f], node)) {
      fail(ErrorKind::InvalidGeometry, "corner face with unexpected edge count");
    }
  }
  std::vector<int> cycle;
  cycle.reserve(k);
  std::vector<bool> seen(k, false);
  int cur = 0, prev = -1;
  for (int step = 0; step < k; ++step) {
    cycle.push_back(cur);
    seen[cur] = true;
    auto& nb = edge_neighbors[cur];
    if (nb.size() != 2)
      fail(ErrorKind::InvalidGeometry, "corner link is not a cycle");
    int next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (cur != 0 || !std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    fail(ErrorKind::InvalidGeometry, "corner link is not a single cycle");

  // Girard: solid angle = sum of dihedral angles along the rays - (k-2) pi.
  double sum = 0.0;
  for (int t = 0; t < k; ++t) {
    const Eigen::Vector3d& u = rays[cycle[t]];
    const Eigen::Vector3d& up = rays[cycle[(t + k - 1) % k]];
    const Eigen::Vector3d& un = rays[cycle[(t + 1) % k]];
    const Eigen::Vector3d a = up - up.dot(u) * u;
    const Eigen::Vector3d b = un - un.dot(u) * u;
    sum += std::atan2(a.cross(b).norm(), a.dot(b));
  }
  return sum - (k - 2) * std::numbers::pi;
}

double Mesh::angle_measure(int p, int i, int node) const {
  if (p < 1 || p > dim_)
    fail(ErrorKind::InvalidArgument, "angle_measure: bad cell dimension");
  if (p == 1) {
    auto nodes = hyperfaces_[1][i];
    if (nodes[0] != node && nodes[1] != node)
      fail(ErrorKind::NotIncident, "node not an endpoint of edge");
    return 0.5;
  }
  if (!sorted_contains(faces_[p][0][i], node))
    fail(ErrorKind::NotIncident, "node not incident to cell");
  if (p == 2) return corner_planar_angle(i, node) / (2.0 * std::numbers::pi);
  return corner_solid_angle(i, node) / (4.0 * std::numbers::pi);
}

double Mesh::node_curvature(int node) const {
  double total = 0.0;
  for (int c : cofaces_[0][dim_][node]) total += angle_measure(dim_, c, node);
  if (total <= 0.0)
    fail(ErrorKind::InvalidGeometry, "node has no angle contributions");
  return 1.0 / total;
}

ValidationReport Mesh::validate() const {
  ValidationReport rep;
  if (dim_ <= 0) {
    rep.is_manifold_like = true;
    rep.has_cubical_corners = true;
    return rep;
  }

  bool has_superface = true;
  for (int p = 0; p < dim_; ++p) {
    std::vector<CellId> bad;
    for (int i = 0; i < counts_[p]; ++i) {
      if (cofaces_[p][dim_][i].empty()) bad.push_back({p, i});
    }
    if (!bad.empty()) {
      has_superface = false;
      rep.failures.push_back({"has-d-superface", std::move(bad)});
    }
  }

  bool two_cofaces = true;
  {
    std::vector<CellId> bad;
    for (int i = 0; i < counts_[dim_ - 1]; ++i) {
      const int n = static_cast<int>(cofaces_[dim_ - 1][dim_][i].size());
      if (n > 2) bad.push_back({dim_ - 1, i});
      else if (n == 1) rep.boundary_cell_ids.push_back({dim_ - 1, i});
    }
    if (!bad.empty()) {
      two_cofaces = false;
      rep.failures.push_back({"at-most-two-d-superfaces", std::move(bad)});
    }
  }

  bool all_regular = true;
  for (int p = 0; p + 2 <= dim_; ++p) {
    std::vector<CellId> bad;
    for (int i = 0; i < counts_[p]; ++i) {
      auto supers = cofaces_[p][p + 2][i];
      const int n = static_cast<int>(supers.size());
      if (n <= 1) continue;
      // Union the cliques induced by common (p+1)-superfaces.
      std::vector<int> comp(n);
      for (int t = 0; t < n; ++t) comp[t] = t;
      std::function<int(int)> find = [&](int a) {
        while (comp[a] != a) a = comp[a] = comp[comp[a]];
        return a;
      };
      for (int m : cofaces_[p][p + 1][i]) {
        int first = -1;
        for (int s : cofaces_[p + 1][p + 2][m]) {
          auto it = std::lower_bound(supers.begin(), supers.end(), s);
          if (it == supers.end() || *it != s) continue;
          const int local = static_cast<int>(it - supers.begin());
          if (first < 0) first = local;
          else comp[find(local)] = find(first);
        }
      }
      int roots = 0;
      for (int t = 0; t < n; ++t)
        if (find(t) == t) ++roots;
      if (roots != 1) bad.push_back({p, i});
    }
    rep.is_p_regular[p] = bad.empty();
    if (!bad.empty()) {
      all_regular = false;
      rep.failures.push_back({"p-regular", std::move(bad)});
    }
  }

  rep.is_manifold_like = has_superface && two_cofaces && all_regular;

  {
    std::vector<CellId> bad;
    for (int i = 0; i < counts_[dim_]; ++i) {
      for (int v : faces_[dim_][0][i]) {
        int deg = 0;
        for (int e : faces_[dim_][1][i]) {
          auto nodes = hyperfaces_[1][e];
          if (nodes[0] == v || nodes[1] == v) ++deg;
        }
        if (deg != dim_) {
          bad.push_back({dim_, i});
          break;
        }
      }
    }
    rep.has_cubical_corners = bad.empty();
    if (!bad.empty())
      rep.failures.push_back({"cubical-corners", std::move(bad)});
  }

  return rep;
}

std::vector<int> Mesh::boundary_hyperfaces() const {
  std::vector<int> out;
  if (dim_ < 1) return out;
  for (int i = 0; i < counts_[dim_ - 1]; ++i) {
    if (cofaces_[dim_ - 1][dim_][i].size() == 1) out.push_back(i);
  }
  return out;
}

std::shared_ptr<const Mesh> Mesh::boundary_submesh(std::vector<int>* vertex_map) const {
  const int bd = dim_ - 1;
  std::vector<int> seeds = boundary_hyperfaces();
  if (seeds.empty() || dim_ < 1) {
    if (vertex_map) vertex_map->clear();
    return Mesh::build(embedding_dim_, {}, {});
  }

  std::array<std::vector<int>, kMaxDim + 1> keep; // old ids per dim
  std::array<std::vector<int>, kMaxDim + 1> remap;
  for (int p = 0; p <= kMaxDim; ++p) remap[p].assign(counts_[p], -1);
  keep[bd] = seeds;
  for (int r = 0; r < bd; ++r) {
    std::set<int> ids;
    for (int s : seeds)
      for (int f : faces_[bd][r][s]) ids.insert(f);
    keep[r].assign(ids.begin(), ids.end());
  }
  for (int p = 0; p <= bd; ++p) {
    for (int t = 0; t < static_cast<int>(keep[p].size()); ++t)
      remap[p][keep[p][t]] = t;
  }

  std::vector<Eigen::Vector3d> verts;
  verts.reserve(keep[0].size());
  for (int v : keep[0]) verts.push_back(vertices_[v]);
  if (vertex_map) *vertex_map = keep[0];

  Tables tables;
  for (int p = 1; p <= bd; ++p) {
    tables[p].reserve(keep[p].size());
    for (int old : keep[p]) {
      std::vector<int> row;
      for (int f : hyperfaces_[p][old]) row.push_back(remap[p - 1][f]);
      tables[p].push_back(std::move(row));
    }
  }
  return Mesh::build(embedding_dim_, std::move(verts), tables);
}

} // namespace fdf
