#include "newton_maps/newton.hpp"

#include <algorithm>
#include <numeric>

#include "newton_maps/canon.hpp"
#include "newton_maps/duality.hpp"

namespace newton_maps {

std::string_view to_string(AngleStatus status) {
  switch (status) {
    case AngleStatus::kAlwaysHolds: return "always-holds";
    case AngleStatus::kImpliedByEuler: return "implied-by-E";
    case AngleStatus::kUnavailable: return "unavailable";
  }
  return "unavailable";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNewton: return "newton";
    case Verdict::kNotNewton: return "not-newton";
    case Verdict::kEulerOnly: return "e-only";
  }
  return "not-newton";
}

EPropertyResult check_e_property(const EmbeddedMap& map) {
  EPropertyResult result;
  const auto walks = facial_walks(map);
  std::vector<std::size_t> last_walk(map.num_edges(), walks.size());
  for (std::size_t w = 0; w < walks.size(); ++w) {
    for (EdgeId e : walks[w].edges) {
      if (last_walk[static_cast<std::size_t>(e)] == w) {
        result.holds = false;
        result.walk = w;
        result.repeated_edge = e;
        return result;
      }
      last_walk[static_cast<std::size_t>(e)] = w;
    }
  }
  return result;
}

bool check_degree_bounds(const EmbeddedMap& map, int order) {
  const int cap = 2 * order;
  auto in_bounds = [&](const std::vector<int>& seq) {
    return std::all_of(seq.begin(), seq.end(), [cap](int d) { return d > 1 && d <= cap; }) &&
           std::accumulate(seq.begin(), seq.end(), 0) == 4 * order;
  };
  return in_bounds(degree_sequence(map)) && in_bounds(face_degree_sequence(map));
}

NewtonReport is_newton(const EmbeddedMap& map, int order) {
  NewtonReport report;
  report.order = order;
  if (order == 2) {
    report.a_property_status = AngleStatus::kAlwaysHolds;
  } else if (order == 3) {
    report.a_property_status = AngleStatus::kImpliedByEuler;
  } else {
    report.a_property_status = AngleStatus::kUnavailable;
  }

  const auto validation = validate(map);
  report.structurally_valid = validation.ok;
  if (!validation.ok) {
    report.e_property.holds = false;
    return report;
  }
  const auto euler = euler_characteristic(map);
  report.is_cellular_toroidal = euler.chi == 0 && euler.vertices == order &&
                                euler.edges == 2 * order && euler.faces == order;
  report.loopless = !validation.has(DefectKind::kLoopPresent);
  report.e_property = check_e_property(map);
  report.degree_bounds = check_degree_bounds(map, order);

  const bool combinatorial = report.is_cellular_toroidal && report.loopless &&
                             report.e_property.holds && report.degree_bounds;
  if (!combinatorial) {
    report.verdict = Verdict::kNotNewton;
  } else if (report.a_property_status == AngleStatus::kUnavailable) {
    report.verdict = Verdict::kEulerOnly;
  } else {
    report.verdict = Verdict::kNewton;
  }
  return report;
}

SelfDualReport self_duality(const EmbeddedMap& map) {
  const EmbeddedMap stored = dual(map);
  const EmbeddedMap reversed = mirror(stored);
  SelfDualReport r;
  r.with_reflection = canonical_key(map, true) == canonical_key(reversed, true);
  const auto key_op = canonical_key(map, false);
  r.orientation_preserving = key_op == canonical_key(reversed, false);
  r.matches_dual_as_stored = key_op == canonical_key(stored, false);
  return r;
}

bool is_self_dual(const EmbeddedMap& map, bool allow_reflection) {
  const EmbeddedMap reversed = mirror(dual(map));
  return canonical_key(map, allow_reflection) == canonical_key(reversed, allow_reflection);
}

}  // namespace newton_maps
