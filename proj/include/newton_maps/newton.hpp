#pragma once

#include <optional>
#include <string_view>

#include "newton_maps/embedded_map.hpp"

namespace newton_maps {

struct EPropertyResult {
  bool holds = true;
  // First facial walk (index into facial_walks()) traversing an edge twice.
  std::optional<std::size_t> walk;
  std::optional<EdgeId> repeated_edge;
};

// Every face boundary is an Euler circuit of its own boundary subgraph: no
// facial walk uses an edge twice. Equivalently each edge separates two
// distinct faces, and the dual is loopless.
EPropertyResult check_e_property(const EmbeddedMap& map);

// Vertex and face degrees in (1, 2r], each sequence summing to 4r.
bool check_degree_bounds(const EmbeddedMap& map, int order);

enum class AngleStatus { kAlwaysHolds, kImpliedByEuler, kUnavailable };
enum class Verdict { kNewton, kNotNewton, kEulerOnly };

std::string_view to_string(AngleStatus status);
std::string_view to_string(Verdict verdict);

struct NewtonReport {
  int order = 0;
  bool structurally_valid = false;
  bool is_cellular_toroidal = false;  // connected, V=r, E=2r, F=r, chi=0
  bool loopless = false;
  EPropertyResult e_property;
  bool degree_bounds = false;
  AngleStatus a_property_status = AngleStatus::kUnavailable;
  Verdict verdict = Verdict::kNotNewton;
};

// Only orders 2 and 3 can be certified; the angle property reduces to the
// Euler property there. Higher orders report kEulerOnly at best.
NewtonReport is_newton(const EmbeddedMap& map, int order);

struct SelfDualReport {
  // map ~ -dual(map) up to isomorphism that may reverse orientation.
  bool with_reflection = false;
  // map ~ -dual(map) by an orientation-preserving isomorphism.
  bool orientation_preserving = false;
  // map ~ dual(map) by an orientation-preserving isomorphism, with the dual
  // kept in its stored clockwise rotation.
  bool matches_dual_as_stored = false;
};

SelfDualReport self_duality(const EmbeddedMap& map);
bool is_self_dual(const EmbeddedMap& map, bool allow_reflection = true);

}  // namespace newton_maps
