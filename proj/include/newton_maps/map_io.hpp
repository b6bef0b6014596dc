#pragma once

// Line-oriented map documents:
//
//   # comment
//   order 2
//   orientation clockwise-faces
//   edge a v1 v2
//   ...
//   rot v1 a b c d
//   rot v2 a b c d
//
// `rot` lists the edge-ends at a vertex in anti-clockwise order. A loop's two
// ends are written name:0 (first declared endpoint) and name:1.

#include <string>
#include <string_view>

#include "newton_maps/embedded_map.hpp"
#include "newton_maps/enumerate.hpp"
#include "newton_maps/newton.hpp"

#include <json.hpp>

namespace newton_maps {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

std::string_view to_string(Orientation o);

EmbeddedMap parse_map(std::string_view text);

// Vertices in natural name order, each rotation starting at its
// lexicographically smallest edge-end token, edges in dart order.
std::string serialize_map(const EmbeddedMap& map);

EmbeddedMap load_map_file(const std::string& path);

nlohmann::json map_to_json(const EmbeddedMap& map);
nlohmann::json faces_to_json(const EmbeddedMap& map);
nlohmann::json validation_to_json(const ValidationReport& report);
nlohmann::json newton_report_to_json(const EmbeddedMap& map, const NewtonReport& report);
nlohmann::json self_dual_to_json(const SelfDualReport& report);
nlohmann::json atlas_entry_to_json(const AtlasEntry& entry);
nlohmann::json report_to_json(const ClassificationReport& report,
                              const std::vector<DualityClassLabel>& labels);

// One compact JSON object per line, in atlas order.
std::string atlas_to_jsonl(const std::vector<AtlasEntry>& entries);
std::string report_to_text(const ClassificationReport& report,
                           const std::vector<DualityClassLabel>& labels);

}  // namespace newton_maps
