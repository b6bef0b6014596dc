#include "newton_maps/map_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "newton_maps/duality.hpp"

namespace newton_maps {

using nlohmann::json;

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                 message),
      line_(line),
      column_(column) {}

std::string_view to_string(Orientation o) {
  return o == Orientation::kClockwiseFaces ? "clockwise-faces" : "anticlockwise-faces";
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' ||
           c == '.' || c == '-' || c == '+';
  });
}

bool is_loop(const EmbeddedMap& map, EdgeId e) {
  return map.origin(2 * e) == map.origin(2 * e + 1);
}

std::string end_token(const EmbeddedMap& map, Dart d) {
  const EdgeId e = edge_of(d);
  if (!is_loop(map, e)) return map.edge_name(e);
  return map.edge_name(e) + ((d & 1) ? ":1" : ":0");
}

}  // namespace

EmbeddedMap parse_map(std::string_view text) {
  struct EdgeDecl {
    std::string name;
    std::string ends[2];
    std::size_t line;
  };
  struct RotDecl {
    std::string vertex;
    std::vector<Token> ends;
    std::size_t line;
  };
  std::vector<EdgeDecl> edges;
  std::map<std::string, std::size_t> edge_index;
  std::vector<RotDecl> rots;
  std::optional<long> order;
  std::size_t order_line = 0;
  Orientation orientation = Orientation::kClockwiseFaces;
  bool orientation_seen = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    const auto tok = tokenize(line);
    if (tok.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::string& kw = tok[0].text;
    if (kw == "order") {
      if (order) throw ParseError(line_no, tok[0].column, "duplicate order record");
      if (tok.size() != 2) throw ParseError(line_no, tok[0].column, "expected: order <r>");
      try {
        std::size_t used = 0;
        order = std::stol(tok[1].text, &used);
        if (used != tok[1].text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, tok[1].column, "order must be an integer");
      }
      order_line = line_no;
    } else if (kw == "orientation") {
      if (orientation_seen) throw ParseError(line_no, tok[0].column, "duplicate orientation record");
      if (tok.size() != 2) throw ParseError(line_no, tok[0].column, "expected: orientation <marker>");
      if (tok[1].text == "clockwise-faces") {
        orientation = Orientation::kClockwiseFaces;
      } else if (tok[1].text == "anticlockwise-faces") {
        orientation = Orientation::kAnticlockwiseFaces;
      } else {
        throw ParseError(line_no, tok[1].column, "unknown orientation '" + tok[1].text + "'");
      }
      orientation_seen = true;
    } else if (kw == "edge") {
      if (tok.size() != 4) throw ParseError(line_no, tok[0].column, "expected: edge <name> <u> <v>");
      for (std::size_t i = 1; i < 4; ++i) {
        if (!valid_name(tok[i].text)) {
          throw ParseError(line_no, tok[i].column, "invalid name '" + tok[i].text + "'");
        }
      }
      if (edge_index.count(tok[1].text)) {
        throw ParseError(line_no, tok[1].column, "edge '" + tok[1].text + "' declared twice");
      }
      edge_index[tok[1].text] = edges.size();
      edges.push_back({tok[1].text, {tok[2].text, tok[3].text}, line_no});
    } else if (kw == "rot") {
      if (tok.size() < 2) throw ParseError(line_no, tok[0].column, "expected: rot <vertex> <ends...>");
      rots.push_back({tok[1].text, std::vector<Token>(tok.begin() + 2, tok.end()), line_no});
      for (const auto& r : rots) {
        if (&r != &rots.back() && r.vertex == tok[1].text) {
          throw ParseError(line_no, tok[1].column, "second rotation for vertex '" + tok[1].text + "'");
        }
      }
    } else {
      throw ParseError(line_no, tok[0].column, "unknown record '" + kw + "'");
    }
    if (eol == text.size()) break;
  }

  std::set<std::string> vertex_set;
  for (const auto& e : edges) vertex_set.insert({e.ends[0], e.ends[1]});
  std::vector<std::string> vertex_names(vertex_set.begin(), vertex_set.end());
  std::sort(vertex_names.begin(), vertex_names.end(), natural_less);
  std::map<std::string, VertexId> vertex_index;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) vertex_index[vertex_names[i]] = static_cast<VertexId>(i);

  if (order && *order != static_cast<long>(vertex_names.size())) {
    throw ParseError(order_line, 7, "order " + std::to_string(*order) + " but " +
                                        std::to_string(vertex_names.size()) + " vertices declared");
  }

  const std::size_t n = 2 * edges.size();
  std::vector<VertexId> origin(n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    origin[2 * k] = vertex_index[edges[k].ends[0]];
    origin[2 * k + 1] = vertex_index[edges[k].ends[1]];
  }

  std::vector<Dart> sigma(n, -1);
  std::vector<int> used(n, 0);
  std::set<std::string> rotated;
  for (const auto& r : rots) {
    if (!vertex_index.count(r.vertex)) {
      throw ParseError(r.line, 5, "vertex '" + r.vertex + "' has no declared edges");
    }
    const VertexId v = vertex_index[r.vertex];
    rotated.insert(r.vertex);
    std::vector<Dart> cycle;
    for (const auto& t : r.ends) {
      std::string name = t.text;
      int end = -1;
      if (const auto colon = name.rfind(':'); colon != std::string::npos) {
        const std::string suffix = name.substr(colon + 1);
        if (suffix != "0" && suffix != "1") {
          throw ParseError(r.line, t.column, "loop end must be :0 or :1 in '" + t.text + "'");
        }
        end = suffix == "1" ? 1 : 0;
        name = name.substr(0, colon);
      }
      const auto it = edge_index.find(name);
      if (it == edge_index.end()) throw ParseError(r.line, t.column, "unknown edge '" + name + "'");
      const std::size_t k = it->second;
      const bool loop = origin[2 * k] == origin[2 * k + 1];
      Dart d = -1;
      if (loop) {
        if (end < 0) {
          throw ParseError(r.line, t.column,
                           "loop '" + name + "' needs an end disambiguator (" + name + ":0 or " + name + ":1)");
        }
        d = static_cast<Dart>(2 * k + static_cast<std::size_t>(end));
      } else {
        if (end >= 0) throw ParseError(r.line, t.column, "end disambiguator on non-loop edge '" + name + "'");
        if (origin[2 * k] == v) {
          d = static_cast<Dart>(2 * k);
        } else if (origin[2 * k + 1] == v) {
          d = static_cast<Dart>(2 * k + 1);
        } else {
          throw ParseError(r.line, t.column,
                           "edge '" + name + "' is not incident with vertex '" + r.vertex + "'");
        }
      }
      if (origin[static_cast<std::size_t>(d)] != v) {
        throw ParseError(r.line, t.column, "edge end '" + t.text + "' does not sit at '" + r.vertex + "'");
      }
      if (used[static_cast<std::size_t>(d)]++) {
        throw ParseError(r.line, t.column, "edge end '" + t.text + "' listed twice");
      }
      cycle.push_back(d);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      sigma[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (!used[d]) {
      const auto& e = edges[d / 2];
      throw ParseError(e.line, 6, "edge '" + e.name + "' occurs once in the rotations (expected twice)");
    }
  }
  for (const auto& v : vertex_names) {
    if (!rotated.count(v)) throw ParseError(line_no, 1, "vertex '" + v + "' has no rot record");
  }

  std::vector<Dart> alpha(n);
  for (std::size_t d = 0; d < n; ++d) alpha[d] = partner_dart(static_cast<Dart>(d));
  std::vector<std::string> edge_names;
  for (const auto& e : edges) edge_names.push_back(e.name);
  return EmbeddedMap(std::move(sigma), std::move(alpha), std::move(origin), std::move(vertex_names),
                     std::move(edge_names), orientation);
}

std::string serialize_map(const EmbeddedMap& map) {
  std::ostringstream out;
  out << "order " << map.num_vertices() << '\n';
  out << "orientation " << to_string(map.orientation()) << '\n';
  for (std::size_t k = 0; k < map.num_edges(); ++k) {
    out << "edge " << map.edge_name(static_cast<EdgeId>(k)) << ' '
        << map.vertex_name(map.origin(static_cast<Dart>(2 * k))) << ' '
        << map.vertex_name(map.origin(static_cast<Dart>(2 * k + 1))) << '\n';
  }
  std::vector<VertexId> order(map.num_vertices());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = static_cast<VertexId>(v);
  std::sort(order.begin(), order.end(), [&map](VertexId a, VertexId b) {
    return natural_less(map.vertex_name(a), map.vertex_name(b));
  });
  for (VertexId v : order) {
    const auto rot = map.rotation_at(v);
    std::vector<std::string> tokens;
    for (Dart d : rot) tokens.push_back(end_token(map, d));
    const auto start = std::min_element(tokens.begin(), tokens.end()) - tokens.begin();
    out << "rot " << map.vertex_name(v);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      out << ' ' << tokens[(static_cast<std::size_t>(start) + i) % tokens.size()];
    }
    out << '\n';
  }
  return out.str();
}

EmbeddedMap load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_map(buf.str());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json map_to_json(const EmbeddedMap& map) {
  json j;
  j["order"] = map.num_vertices();
  j["orientation"] = std::string(to_string(map.orientation()));
  json edges = json::array();
  for (std::size_t k = 0; k < map.num_edges(); ++k) {
    edges.push_back({{"name", map.edge_name(static_cast<EdgeId>(k))},
                     {"ends", {map.vertex_name(map.origin(static_cast<Dart>(2 * k))),
                               map.vertex_name(map.origin(static_cast<Dart>(2 * k + 1)))}}});
  }
  j["edges"] = edges;
  json rot = json::object();
  for (std::size_t v = 0; v < map.num_vertices(); ++v) {
    json ends = json::array();
    for (Dart d : map.rotation_at(static_cast<VertexId>(v))) ends.push_back(end_token(map, d));
    rot[map.vertex_name(static_cast<VertexId>(v))] = ends;
  }
  j["rotations"] = rot;
  j["sigma"] = std::vector<Dart>(map.sigma_perm().begin(), map.sigma_perm().end());
  return j;
}

json faces_to_json(const EmbeddedMap& map) {
  json faces = json::array();
  for (const auto& w : facial_walks(map)) {
    faces.push_back({{"length", w.length()}, {"walk", format_walk(map, w)}, {"darts", w.darts}});
  }
  const auto e = euler_characteristic(map);
  return {{"faces", faces}, {"chi", e.chi}, {"genus", e.genus}};
}

json validation_to_json(const ValidationReport& report) {
  json defects = json::array();
  for (const auto& d : report.defects) {
    defects.push_back({{"tag", std::string(defect_tag(d.kind))},
                       {"advisory", is_advisory(d.kind)},
                       {"subject", d.subject},
                       {"detail", d.detail}});
  }
  return {{"ok", report.ok}, {"defects", defects}};
}

json newton_report_to_json(const EmbeddedMap& map, const NewtonReport& r) {
  json e = {{"holds", r.e_property.holds}};
  if (r.e_property.walk) e["walk"] = *r.e_property.walk;
  if (r.e_property.repeated_edge) e["repeated_edge"] = map.edge_name(*r.e_property.repeated_edge);
  return {{"order", r.order},
          {"structurally_valid", r.structurally_valid},
          {"is_cellular_toroidal", r.is_cellular_toroidal},
          {"loopless", r.loopless},
          {"e_property", e},
          {"degree_bounds", r.degree_bounds},
          {"a_property_status", std::string(to_string(r.a_property_status))},
          {"verdict", std::string(to_string(r.verdict))}};
}

json self_dual_to_json(const SelfDualReport& r) {
  return {{"with_reflection", r.with_reflection},
          {"orientation_preserving", r.orientation_preserving},
          {"matches_dual_as_stored", r.matches_dual_as_stored}};
}

json atlas_entry_to_json(const AtlasEntry& e) {
  json faces = json::array();
  for (const auto& w : facial_walks(e.representative)) {
    faces.push_back(format_walk(e.representative, w));
  }
  return {{"key", e.key.hex()},
          {"key_op", e.key_op.hex()},
          {"dual_key", e.dual_key.hex()},
          {"delta", e.delta},
          {"delta_star", e.delta_star},
          {"max_face", e.max_face},
          {"vertex_pattern", e.vertex_pattern},
          {"self_dual", e.self_dual},
          {"self_dual_op", e.self_dual_op},
          {"label", e.label},
          {"label_ambiguous", e.label_ambiguous},
          {"faces", faces},
          {"document", serialize_map(e.representative)}};
}

namespace {

json stratum_to_json(const Stratum& s) {
  return {{"max_face", s.max_face},
          {"vertex_pattern", s.vertex_pattern},
          {"op_classes", s.op_classes},
          {"refl_classes", s.refl_classes},
          {"self_dual_classes", s.self_dual_classes},
          {"reflection_merges", s.reflection_merges},
          {"dual_pairs", s.dual_pairs}};
}

}  // namespace

json report_to_json(const ClassificationReport& r, const std::vector<DualityClassLabel>& labels) {
  json pairs = json::array();
  for (const auto& [a, b] : r.dual_pairs) pairs.push_back({a.hex(), b.hex()});
  json strata = json::array();
  for (const auto& s : r.strata.strata) strata.push_back(stratum_to_json(s));
  json lab = json::array();
  for (const auto& l : labels) {
    json j = {{"label", l.label}, {"ambiguous", l.ambiguous}, {"key", l.key.hex()}};
    j["dual_key"] = l.dual_key ? json(l.dual_key->hex()) : json(nullptr);
    lab.push_back(j);
  }
  return {{"order", r.order},
          {"certified", r.certified},
          {"count_op", r.count_op},
          {"count_refl", r.count_refl},
          {"count_dual", r.count_dual},
          {"self_dual_count", r.self_dual_count},
          {"dual_pairs", pairs},
          {"strata", strata},
          {"dual_only", stratum_to_json(r.strata.dual_only)},
          {"labels", lab},
          {"stats",
           {{"multiplicity_vectors", r.stats.multiplicity_vectors},
            {"candidates", r.stats.candidates},
            {"toroidal", r.stats.toroidal},
            {"accepted", r.stats.accepted}}}};
}

std::string atlas_to_jsonl(const std::vector<AtlasEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += atlas_entry_to_json(e).dump();
    out += '\n';
  }
  return out;
}

std::string report_to_text(const ClassificationReport& r, const std::vector<DualityClassLabel>& labels) {
  auto seq = [](const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  std::ostringstream out;
  out << "order            " << r.order << (r.certified ? "" : "  (e-only: angle property not checked)") << '\n';
  out << "candidates       " << r.stats.candidates << '\n';
  out << "toroidal         " << r.stats.toroidal << '\n';
  out << "accepted maps    " << r.stats.accepted << '\n';
  out << "count_op         " << r.count_op << '\n';
  out << "count_refl       " << r.count_refl << '\n';
  out << "count_dual       " << r.count_dual << '\n';
  out << "self_dual_count  " << r.self_dual_count << '\n';
  out << "dual_pairs       " << r.dual_pairs.size() << '\n';
  out << "strata (max_face pattern: op refl self-dual merges dual-pairs)\n";
  for (const auto& s : r.strata.strata) {
    out << "  " << s.max_face << ' ' << seq(s.vertex_pattern) << ": " << s.op_classes << ' '
        << s.refl_classes << ' ' << s.self_dual_classes << ' ' << s.reflection_merges << ' '
        << s.dual_pairs << '\n';
  }
  const auto& d = r.strata.dual_only;
  out << "  dual-only: " << d.op_classes << ' ' << d.refl_classes << ' ' << d.self_dual_classes
      << ' ' << d.reflection_merges << ' ' << d.dual_pairs << '\n';
  if (!labels.empty()) {
    out << "duality classes\n";
    for (const auto& l : labels) {
      out << "  " << l.label << (l.ambiguous ? " (ambiguous)" : "")
          << (l.dual_key ? "  + dual" : "  self-dual") << '\n';
    }
  }
  return out.str();
}

}  // namespace newton_maps
