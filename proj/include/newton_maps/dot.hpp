#pragma once

#include <string>

#include "newton_maps/duality.hpp"
#include "newton_maps/embedded_map.hpp"

namespace newton_maps {

// Level 1 as open circles numbered 1..r, level 2 as unlabeled points, level 3
// as filled circles numbered r+1..2r. Each level shares a rank.
std::string p_graph_to_dot(const PGraph& graph, const std::string& name = "P");

// Undirected multigraph with edge names; the rotation at each vertex is kept
// in a comment attribute.
std::string map_to_dot(const EmbeddedMap& map, const std::string& name = "G");

}  // namespace newton_maps
