#pragma once

#include <cstddef>
#include <string>

namespace newton_maps {

inline std::string default_vertex_name(std::size_t v) { return "v" + std::to_string(v + 1); }

// Single letters while they last, then e1, e2, ...
inline std::string default_edge_name(std::size_t k, std::size_t edge_count) {
  if (edge_count <= 26) return std::string(1, static_cast<char>('a' + k));
  return "e" + std::to_string(k + 1);
}

// Face i of an order-r map is named F{r+i+1}; its dual vertex carries the name.
inline std::string face_name(std::size_t face, std::size_t num_vertices) {
  return "F" + std::to_string(num_vertices + face + 1);
}

// a <-> a*
inline std::string dual_edge_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

}  // namespace newton_maps
