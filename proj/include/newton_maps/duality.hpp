#pragma once

#include <string>
#include <utility>
#include <vector>

#include "newton_maps/embedded_map.hpp"

namespace newton_maps {

// The dual keeps the dart set: its rotation is the face permutation
// sigma o alpha of the primal, so dual vertex i is face i of the primal and
// edge k of the dual crosses edge k. This is the clockwise rotation induced
// by the clockwise faces; dual(dual(m)) reproduces sigma and alpha exactly,
// and mirror(dual(m)) is the dual read with anti-clockwise rotations.
EmbeddedMap dual(const EmbeddedMap& map);

class RefinementUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Level : std::uint8_t { kVertex = 1, kIntersection = 2, kFace = 3 };

// Common refinement of a map and its dual. Vertices are laid out as
//   [0, V)          primal vertices
//   [V, V+E)        intersections s_k of edge k with its dual edge
//   [V+E, V+E+F)    dual vertices (primal faces)
// and every primal edge contributes four refined edges: the two halves of
// e_k followed by the two halves of e*_k.
struct RefinedMap {
  EmbeddedMap base;
  std::vector<Level> level_of_vertex;
  // Indexed by intersection number k: (primal edge, dual edge), both k.
  std::vector<std::pair<EdgeId, EdgeId>> intersection_of;

  std::size_t count(Level level) const;
};

// Requires the E-property; throws RefinementUndefined otherwise.
RefinedMap refinement(const EmbeddedMap& map);

struct PGraphNode {
  Level level;
  std::string name;
};

// Directed three-level graph underlying the refinement: arcs go from level 1
// to level 2 and from level 2 to level 3.
struct PGraph {
  std::vector<PGraphNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;

  std::size_t level_size(Level level) const;
  std::size_t out_degree(std::size_t node) const;
};

PGraph abstract_p_graph(const EmbeddedMap& map);

}  // namespace newton_maps
