#pragma once

#include <filesystem>
#include <string>

#include "geoequiv/geometry.hpp"

namespace geoequiv::io {

// Graph file schema:
//   {"directed": bool,
//    "nodes": [{"h": [...], "x": [x, y, z]}],
//    "edges": [{"i": int, "j": int, "e": [...]}]}
// "h" and "e" may be omitted (empty feature).

GeometricGraph parse_graph(const std::string& text);
std::string dump_graph(const GeometricGraph& graph);

GeometricGraph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const GeometricGraph& graph);

}  // namespace geoequiv::io
