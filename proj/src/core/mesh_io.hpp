#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "mesh.hpp"

namespace fdf {

/// Versioned plain-text mesh interchange format ("polymesh 1"):
///
///   polymesh 1
///   embedding <2|3>
///   vertices <n>
///   <x> <y> [<z>]          (n lines)
///   cells <p> <count>      (one block per nonempty dimension, ascending)
///   <k> <id_1> ... <id_k>  (hyperface ids, 0-based)
///
std::shared_ptr<const Mesh> read_polymesh(std::istream& in, const std::string& name);
std::shared_ptr<const Mesh> read_polymesh_file(const std::string& path);
void write_polymesh(std::ostream& out, const Mesh& mesh);
void write_polymesh_file(const std::string& path, const Mesh& mesh);

/// Importer for the Neper .tess format (subset: **vertex, **edge, **face,
/// **polyhedron). Other known sections are skipped.
std::shared_ptr<const Mesh> read_tess(std::istream& in, const std::string& name);
std::shared_ptr<const Mesh> read_tess_file(const std::string& path);

/// Loads a mesh from a path, dispatching on extension (.tess vs interchange).
std::shared_ptr<const Mesh> load_mesh(const std::string& path);

} // namespace fdf
