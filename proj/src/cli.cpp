#include "newton_maps/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include "newton_maps/canon.hpp"
#include "newton_maps/dot.hpp"
#include "newton_maps/duality.hpp"
#include "newton_maps/enumerate.hpp"
#include "newton_maps/map_io.hpp"
#include "newton_maps/newton.hpp"

namespace newton_maps {

namespace {

unsigned default_jobs(std::ostream& err) {
  const char* env = std::getenv("NEWTON_ATLAS_JOBS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    err << "warning: ignoring NEWTON_ATLAS_JOBS='" << env << "'\n";
    return 1;
  }
  return static_cast<unsigned>(v);
}

EmbeddedMap load_valid(const std::string& path) {
  EmbeddedMap map = load_map_file(path);
  const auto report = validate(map);
  if (!report.ok) {
    for (const auto& d : report.defects) {
      if (!is_advisory(d.kind)) {
        throw InputError(path + ": invalid map: " + std::string(defect_tag(d.kind)) + ": " + d.detail);
      }
    }
  }
  return map;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << content;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation-system maps on surfaces and Newton graph classification", "newton-maps"};
  app.require_subcommand(1);

  std::string file, file_b, format = "text", export_to = "text", out_dir;
  bool reflect = false, dot = false;
  int order = 0;
  unsigned jobs = default_jobs(err);

  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check structural soundness of a map");
  validate_cmd->add_option("FILE", file)->required();
  add_format(validate_cmd);

  auto* faces_cmd = app.add_subcommand("faces", "Print the facial walks");
  faces_cmd->add_option("FILE", file)->required();
  add_format(faces_cmd);

  auto* dual_cmd = app.add_subcommand("dual", "Write the dual map document");
  dual_cmd->add_option("FILE", file)->required();

  auto* refine_cmd = app.add_subcommand("refine", "Report (V,E,F) of the common refinement");
  refine_cmd->add_option("FILE", file)->required();
  add_format(refine_cmd);

  auto* pgraph_cmd = app.add_subcommand("pgraph", "Three-level graph underlying the refinement");
  pgraph_cmd->add_option("FILE", file)->required();
  pgraph_cmd->add_flag("--dot", dot, "Emit Graphviz DOT");

  auto* canon_cmd = app.add_subcommand("canon", "Print the canonical key (hex)");
  canon_cmd->add_option("FILE", file)->required();
  canon_cmd->add_flag("--reflect", reflect, "Allow orientation-reversing isomorphisms");

  auto* iso_cmd = app.add_subcommand("iso", "Test two maps for equivalence (exit 0/1)");
  iso_cmd->add_option("A", file)->required();
  iso_cmd->add_option("B", file_b)->required();
  iso_cmd->add_flag("--reflect", reflect, "Allow orientation-reversing isomorphisms");

  auto* selfdual_cmd = app.add_subcommand("selfdual", "Self-duality in both senses");
  selfdual_cmd->add_option("FILE", file)->required();
  add_format(selfdual_cmd);

  auto* newton_cmd = app.add_subcommand("newton", "Newton graph report");
  newton_cmd->add_option("FILE", file)->required();
  newton_cmd->add_option("--order", order, "Order r (default: vertex count)");
  add_format(newton_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Enumerate and classify Newton graphs");
  classify_cmd->add_option("--order", order, "Order r")->required();
  classify_cmd->add_option("--jobs", jobs, "Worker threads (default $NEWTON_ATLAS_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--out", out_dir, "Write atlas and report files into DIR");
  add_format(classify_cmd);

  auto* atlas_cmd = app.add_subcommand("atlas", "Print the atlas as JSON lines");
  atlas_cmd->add_option("--order", order, "Order r")->required();
  atlas_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* export_cmd = app.add_subcommand("export", "Convert a map document");
  export_cmd->add_option("FILE", file)->required();
  export_cmd->add_option("--to", export_to, "Target format")->check(CLI::IsMember({"text", "json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool json_out = format == "json";
  try {
    if (validate_cmd->parsed()) {
      const auto map = load_map_file(file);
      const auto report = validate(map);
      if (json_out) {
        out << validation_to_json(report).dump(2) << '\n';
      } else {
        out << (report.ok ? "ok" : "invalid") << '\n';
        for (const auto& d : report.defects) {
          out << (is_advisory(d.kind) ? "advisory " : "defect ") << defect_tag(d.kind) << ": "
              << d.detail << '\n';
        }
      }
      return report.ok ? kExitOk : kExitFalse;
    }
    if (faces_cmd->parsed()) {
      const auto map = load_valid(file);
      if (json_out) {
        out << faces_to_json(map).dump(2) << '\n';
      } else {
        for (const auto& w : facial_walks(map)) out << format_walk(map, w) << '\n';
      }
      return kExitOk;
    }
    if (dual_cmd->parsed()) {
      out << serialize_map(dual(load_valid(file)));
      return kExitOk;
    }
    if (refine_cmd->parsed()) {
      const auto refined = refinement(load_valid(file));
      const auto e = euler_characteristic(refined.base);
      if (json_out) {
        out << nlohmann::json{{"vertices", e.vertices}, {"edges", e.edges}, {"faces", e.faces}}.dump(2)
            << '\n';
      } else {
        out << "vertices " << e.vertices << "\nedges " << e.edges << "\nfaces " << e.faces << '\n';
      }
      return kExitOk;
    }
    if (pgraph_cmd->parsed()) {
      const auto graph = abstract_p_graph(load_valid(file));
      if (dot) {
        out << p_graph_to_dot(graph);
      } else {
        for (const auto& [from, to] : graph.arcs) {
          out << graph.nodes[from].name << " -> " << graph.nodes[to].name << '\n';
        }
      }
      return kExitOk;
    }
    if (canon_cmd->parsed()) {
      out << canonical_key(load_valid(file), reflect).hex() << '\n';
      return kExitOk;
    }
    if (iso_cmd->parsed()) {
      const auto a = load_valid(file);
      const auto b = load_valid(file_b);
      const bool same = are_equivalent(a, b, reflect).has_value();
      out << bool_text(same) << '\n';
      return same ? kExitOk : kExitFalse;
    }
    if (selfdual_cmd->parsed()) {
      const auto r = self_duality(load_valid(file));
      if (json_out) {
        out << self_dual_to_json(r).dump(2) << '\n';
      } else {
        out << "with-reflection " << bool_text(r.with_reflection) << '\n'
            << "orientation-preserving " << bool_text(r.orientation_preserving) << '\n'
            << "matches-dual-as-stored " << bool_text(r.matches_dual_as_stored) << '\n';
      }
      return r.with_reflection ? kExitOk : kExitFalse;
    }
    if (newton_cmd->parsed()) {
      const auto map = load_map_file(file);
      const int r = order > 0 ? order : static_cast<int>(map.num_vertices());
      const auto report = is_newton(map, r);
      const auto j = newton_report_to_json(map, report);
      if (json_out) {
        out << j.dump(2) << '\n';
      } else {
        out << "verdict " << to_string(report.verdict) << '\n'
            << "order " << report.order << '\n'
            << "cellular-toroidal " << bool_text(report.is_cellular_toroidal) << '\n'
            << "loopless " << bool_text(report.loopless) << '\n'
            << "e-property " << bool_text(report.e_property.holds);
        if (report.e_property.repeated_edge) {
          out << " (edge " << map.edge_name(*report.e_property.repeated_edge) << " twice on face "
              << *report.e_property.walk + 1 << ")";
        }
        out << '\n'
            << "degree-bounds " << bool_text(report.degree_bounds) << '\n'
            << "a-property " << to_string(report.a_property_status) << '\n';
      }
      if (report.verdict == Verdict::kEulerOnly) {
        err << "warning: angle property not checked for order " << r << "\n";
      }
      return report.verdict == Verdict::kNewton ? kExitOk : kExitFalse;
    }
    if (classify_cmd->parsed() || atlas_cmd->parsed()) {
      require_supported_order(order);
      if (!is_certified_order(order)) {
        err << "warning: order " << order
            << " runs in e-only mode; the angle property is not checked\n";
      }
      auto enumeration = enumerate_newton({order, jobs, true});
      std::vector<DualityClassLabel> labels;
      if (is_certified_order(order)) labels = label_atlas(enumeration.entries);
      const std::string atlas = atlas_to_jsonl(enumeration.entries);
      if (atlas_cmd->parsed()) {
        out << atlas;
        return kExitOk;
      }
      auto report = classify(enumeration.entries);
      report.order = order;
      report.certified = enumeration.certified;
      report.stats = enumeration.stats;
      const std::string report_json = report_to_json(report, labels).dump(2) + "\n";
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string suffix = "order" + std::to_string(order);
        write_file(std::filesystem::path(out_dir) / ("atlas-" + suffix + ".jsonl"), atlas);
        write_file(std::filesystem::path(out_dir) / ("classification-" + suffix + ".json"), report_json);
      }
      out << (json_out ? report_json : report_to_text(report, labels));
      return kExitOk;
    }
    if (export_cmd->parsed()) {
      const auto map = load_map_file(file);
      if (export_to == "json") {
        out << map_to_json(map).dump(2) << '\n';
      } else if (export_to == "dot") {
        out << map_to_dot(map);
      } else {
        out << serialize_map(map);
      }
      return kExitOk;
    }
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const UnsupportedOrder& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const RefinementUndefined& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace newton_maps
