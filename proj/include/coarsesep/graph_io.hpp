#pragma once

#include <filesystem>
#include <string>

#include "coarsesep/graph.hpp"

namespace coarsesep {

/// Reads the JSON graph format:
///
///     { "vertices": [ {"id": 0, "group": {"cyclic": 2}},
///                     {"id": 1, "group": {"table": [[0,1],[1,0]]}},
///                     {"id": 2, "group": {"abstract": {"order": "infinite",
///                                                       "hyperbolic": "yes"}}} ],
///       "edges": [[0,1], [1,2]] }
///
/// Vertex ids must be exactly 0..V-1 (in any order). Abstract groups accept
/// "order" (integer >= 2 or "infinite") and the flags "hyperbolic",
/// "virtually_infinite_cyclic", "virtual_surface" (yes/no/unknown, default
/// unknown). Every invariant of LabeledGraph and VertexGroup is checked.
LabeledGraph parse_graph(const std::string& text);
LabeledGraph load_graph(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace coarsesep
