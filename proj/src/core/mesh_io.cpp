#include "mesh_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fdf {

namespace {

class LineReader {
public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }

  /// Next non-blank line, or parse error with the given context.
  std::string require(const std::string& what) {
    std::string line;
    while (next(line)) {
      if (line.find_first_not_of(" \t") != std::string::npos) return line;
    }
    fail(ErrorKind::ParseError,
         name_ + ": unexpected end of file while reading " + what);
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError,
         name_ + ":" + std::to_string(lineno_) + ": " + msg);
  }

  int lineno() const { return lineno_; }

private:
  std::istream& in_;
  std::string name_;
  int lineno_ = 0;
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long to_long(LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) r.error("bad integer '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    r.error("bad integer '" + tok + "'");
  }
}

double to_double(LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) r.error("bad number '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    r.error("bad number '" + tok + "'");
  }
}

} // namespace

std::shared_ptr<const Mesh> read_polymesh(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  {
    auto toks = tokenize(r.require("header"));
    if (toks.size() != 2 || toks[0] != "polymesh" || toks[1] != "1")
      r.error("expected header 'polymesh 1'");
  }
  int embedding = 3;
  {
    auto toks = tokenize(r.require("embedding"));
    if (toks.size() != 2 || toks[0] != "embedding") r.error("expected 'embedding <dim>'");
    embedding = static_cast<int>(to_long(r, toks[1]));
    if (embedding < 2 || embedding > 3) r.error("embedding must be 2 or 3");
  }
  std::vector<Eigen::Vector3d> vertices;
  {
    auto toks = tokenize(r.require("vertex count"));
    if (toks.size() != 2 || toks[0] != "vertices") r.error("expected 'vertices <n>'");
    const long n = to_long(r, toks[1]);
    if (n < 0) r.error("negative vertex count");
    vertices.reserve(n);
    for (long i = 0; i < n; ++i) {
      auto vt = tokenize(r.require("vertex coordinates"));
      if (static_cast<int>(vt.size()) != embedding)
        r.error("expected " + std::to_string(embedding) + " coordinates");
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      for (int k = 0; k < embedding; ++k) p[k] = to_double(r, vt[k]);
      vertices.push_back(p);
    }
  }
  Mesh::Tables tables;
  std::string line;
  while (r.next(line)) {
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "cells" || toks.size() != 3) r.error("expected 'cells <dim> <count>'");
    const int p = static_cast<int>(to_long(r, toks[1]));
    const long n = to_long(r, toks[2]);
    if (p < 1 || p > kMaxDim) r.error("cell dimension out of range");
    if (!tables[p].empty()) r.error("duplicate cells block for dimension " + std::to_string(p));
    tables[p].reserve(n);
    for (long i = 0; i < n; ++i) {
      auto ct = tokenize(r.require("cell record"));
      if (ct.empty()) r.error("empty cell record");
      const long k = to_long(r, ct[0]);
      if (static_cast<long>(ct.size()) != k + 1) r.error("cell record length mismatch");
      std::vector<int> ids;
      ids.reserve(k);
      for (long t = 1; t <= k; ++t) ids.push_back(static_cast<int>(to_long(r, ct[t])));
      tables[p].push_back(std::move(ids));
    }
  }
  return Mesh::build(embedding, std::move(vertices), tables);
}

std::shared_ptr<const Mesh> read_polymesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return read_polymesh(in, path);
}

void write_polymesh(std::ostream& out, const Mesh& mesh) {
  out << "polymesh 1\n";
  out << "embedding " << mesh.embedding_dim() << "\n";
  out << "vertices " << mesh.count(0) << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.count(0); ++v) {
    const auto& p = mesh.vertex(v);
    for (int k = 0; k < mesh.embedding_dim(); ++k) out << (k ? " " : "") << p[k];
    out << "\n";
  }
  for (int p = 1; p <= mesh.dim(); ++p) {
    if (mesh.count(p) == 0) continue;
    out << "cells " << p << " " << mesh.count(p) << "\n";
    for (int i = 0; i < mesh.count(p); ++i) {
      auto hf = mesh.hyperfaces(p, i);
      out << hf.size();
      for (int f : hf) out << " " << f;
      out << "\n";
    }
  }
}

void write_polymesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  write_polymesh(out, mesh);
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

namespace {

bool is_known_skippable(const std::string& section) {
  static const char* known[] = {"tess",   "format", "general", "cell",
                                "domain", "periodicity", "crysym", "ori",
                                "orispread", "oridistrib", "end"};
  for (const char* k : known)
    if (section == k) return true;
  return false;
}

} // namespace

std::shared_ptr<const Mesh> read_tess(std::istream& in, const std::string& name) {
  LineReader r(in, name);

  std::vector<Eigen::Vector3d> vertices;
  Mesh::Tables tables;
  bool saw_vertex = false, saw_edge = false, saw_face = false, saw_poly = false;

  std::string line;
  bool have_line = r.next(line);
  while (have_line) {
    std::string trimmed = line;
    const auto pos = trimmed.find_first_not_of(" \t");
    if (pos == std::string::npos) {
      have_line = r.next(line);
      continue;
    }
    trimmed = trimmed.substr(pos);
    if (trimmed.rfind("*", 0) != 0) {
      have_line = r.next(line);
      continue;
    }
    std::string section = trimmed.substr(trimmed.find_first_not_of('*'));
    for (auto& c : section) c = static_cast<char>(std::tolower(c));

    if (section == "vertex") {
      saw_vertex = true;
      const long n = to_long(r, tokenize(r.require("vertex count"))[0]);
      vertices.assign(n, Eigen::Vector3d::Zero());
      for (long i = 0; i < n; ++i) {
        auto t = tokenize(r.require("vertex record"));
        if (t.size() < 4) r.error("vertex record needs id and 3 coordinates");
        const long id = to_long(r, t[0]);
        if (id < 1 || id > n) r.error("vertex id out of range");
        vertices[id - 1] =
            Eigen::Vector3d(to_double(r, t[1]), to_double(r, t[2]), to_double(r, t[3]));
      }
      have_line = r.next(line);
    } else if (section == "edge") {
      saw_edge = true;
      const long n = to_long(r, tokenize(r.require("edge count"))[0]);
      tables[1].assign(n, {});
      for (long i = 0; i < n; ++i) {
        auto t = tokenize(r.require("edge record"));
        if (t.size() < 3) r.error("edge record needs id and 2 vertex ids");
        const long id = to_long(r, t[0]);
        if (id < 1 || id > n) r.error("edge id out of range");
        tables[1][id - 1] = {static_cast<int>(to_long(r, t[1]) - 1),
                             static_cast<int>(to_long(r, t[2]) - 1)};
      }
      have_line = r.next(line);
    } else if (section == "face") {
      saw_face = true;
      const long n = to_long(r, tokenize(r.require("face count"))[0]);
      tables[2].assign(n, {});
      for (long i = 0; i < n; ++i) {
        auto head = tokenize(r.require("face record"));
        if (head.size() < 2) r.error("face record needs id and vertex count");
        const long id = to_long(r, head[0]);
        if (id < 1 || id > n) r.error("face id out of range");
        const long nv = to_long(r, head[1]);
        if (static_cast<long>(head.size()) != nv + 2) r.error("face vertex list length mismatch");
        auto edges_line = tokenize(r.require("face edge list"));
        if (edges_line.empty()) r.error("missing face edge list");
        const long ne = to_long(r, edges_line[0]);
        if (static_cast<long>(edges_line.size()) != ne + 1)
          r.error("face edge list length mismatch");
        if (ne != nv) r.error("face edge count differs from vertex count");
        std::vector<int> edges;
        edges.reserve(ne);
        for (long t = 1; t <= ne; ++t) {
          const long e = to_long(r, edges_line[t]);
          edges.push_back(static_cast<int>(std::labs(e) - 1));
        }
        tables[2][id - 1] = std::move(edges);
        r.require("face equation");
        r.require("face state");
      }
      have_line = r.next(line);
    } else if (section == "polyhedron") {
      saw_poly = true;
      const long n = to_long(r, tokenize(r.require("polyhedron count"))[0]);
      tables[3].assign(n, {});
      for (long i = 0; i < n; ++i) {
        auto t = tokenize(r.require("polyhedron record"));
        if (t.size() < 2) r.error("polyhedron record needs id and face count");
        const long id = to_long(r, t[0]);
        if (id < 1 || id > n) r.error("polyhedron id out of range");
        const long nf = to_long(r, t[1]);
        if (static_cast<long>(t.size()) != nf + 2) r.error("polyhedron face list length mismatch");
        std::vector<int> fs;
        fs.reserve(nf);
        for (long k = 2; k < static_cast<long>(t.size()); ++k)
          fs.push_back(static_cast<int>(std::labs(to_long(r, t[k])) - 1));
        tables[3][id - 1] = std::move(fs);
      }
      have_line = r.next(line);
    } else if (is_known_skippable(section)) {
      have_line = r.next(line);
    } else {
      fail(ErrorKind::UnsupportedSection,
           name + ":" + std::to_string(r.lineno()) + ": unsupported section '**" +
               section + "'");
    }
  }

  if (!saw_vertex || !saw_edge || !saw_face || !saw_poly)
    fail(ErrorKind::ParseError,
         name + ": missing required section (vertex/edge/face/polyhedron)");
  return Mesh::build(3, std::move(vertices), tables);
}

std::shared_ptr<const Mesh> read_tess_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return read_tess(in, path);
}

std::shared_ptr<const Mesh> load_mesh(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".tess")
    return read_tess_file(path);
  return read_polymesh_file(path);
}

} // namespace fdf
