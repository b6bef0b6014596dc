#include "newton_maps/dot.hpp"

#include <sstream>

namespace newton_maps {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string p_graph_to_dot(const PGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  out << "  rankdir=TB;\n";
  std::size_t level1 = 0, level3 = 0;
  const std::size_t r = graph.level_size(Level::kVertex);
  for (Level level : {Level::kVertex, Level::kIntersection, Level::kFace}) {
    out << "  { rank=same;\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      const auto& node = graph.nodes[i];
      if (node.level != level) continue;
      out << "    n" << i << " [";
      switch (level) {
        case Level::kVertex:
          out << "shape=circle, label=\"" << ++level1 << "\"";
          break;
        case Level::kIntersection:
          out << "shape=point, label=\"\"";
          break;
        case Level::kFace:
          out << "shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\""
              << r + ++level3 << "\"";
          break;
      }
      out << ", tooltip=" << quoted(node.name) << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& [from, to] : graph.arcs) out << "  n" << from << " -> n" << to << ";\n";
  out << "}\n";
  return out.str();
}

std::string map_to_dot(const EmbeddedMap& map, const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < map.num_vertices(); ++v) {
    std::string rot;
    for (Dart d : map.rotation_at(static_cast<VertexId>(v))) {
      if (!rot.empty()) rot += ' ';
      rot += map.edge_name(edge_of(d));
    }
    out << "  " << quoted(map.vertex_name(static_cast<VertexId>(v))) << " [shape=circle, comment="
        << quoted("rot: " + rot) << "];\n";
  }
  for (std::size_t k = 0; k < map.num_edges(); ++k) {
    out << "  " << quoted(map.vertex_name(map.origin(static_cast<Dart>(2 * k)))) << " -- "
        << quoted(map.vertex_name(map.origin(static_cast<Dart>(2 * k + 1)))) << " [label="
        << quoted(map.edge_name(static_cast<EdgeId>(k))) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace newton_maps
