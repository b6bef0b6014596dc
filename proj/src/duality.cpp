#include "newton_maps/duality.hpp"

#include <algorithm>

#include "newton_maps/naming.hpp"

namespace newton_maps {

EmbeddedMap dual(const EmbeddedMap& map) {
  const std::size_t n = map.num_darts();
  std::vector<Dart> sigma(n);
  for (std::size_t d = 0; d < n; ++d) sigma[d] = map.phi(static_cast<Dart>(d));
  const auto face = face_of_darts(map);
  const std::size_t nf = face.empty() ? 0 : static_cast<std::size_t>(*std::max_element(face.begin(), face.end()) + 1);

  std::vector<std::string> vnames;
  for (std::size_t f = 0; f < nf; ++f) vnames.push_back(face_name(f, map.num_vertices()));
  std::vector<std::string> enames;
  for (const auto& e : map.edge_names()) enames.push_back(dual_edge_name(e));
  return EmbeddedMap(std::move(sigma),
                     std::vector<Dart>(map.alpha_perm().begin(), map.alpha_perm().end()),
                     std::vector<VertexId>(face.begin(), face.end()), std::move(vnames),
                     std::move(enames), flipped(map.orientation()));
}

std::size_t RefinedMap::count(Level level) const {
  return static_cast<std::size_t>(std::count(level_of_vertex.begin(), level_of_vertex.end(), level));
}

RefinedMap refinement(const EmbeddedMap& map) {
  const std::size_t n = map.num_darts();
  const std::size_t ne = map.num_edges();
  const std::size_t nv = map.num_vertices();
  const auto face = face_of_darts(map);
  const std::size_t nf = num_faces(map);

  for (std::size_t k = 0; k < ne; ++k) {
    if (face[2 * k] == face[2 * k + 1]) {
      throw RefinementUndefined("refinement needs the E-property: edge " +
                                map.edge_name(static_cast<EdgeId>(k)) +
                                " lies twice on one face");
    }
  }

  std::vector<Dart> phi_inv(n);
  for (std::size_t d = 0; d < n; ++d) {
    phi_inv[static_cast<std::size_t>(map.phi(static_cast<Dart>(d)))] = static_cast<Dart>(d);
  }

  // Refined edge 4k+j owns darts 8k+2j (first end) and 8k+2j+1.
  //   j=0: origin(2k) .. s_k        j=1: s_k .. origin(2k+1)
  //   j=2: s_k .. face(2k)          j=3: s_k .. face(2k+1)
  // face(2k) lies to the right of dart 2k, face(2k+1) to its left.
  auto vertex_half = [](Dart d) -> Dart { return (d & 1) ? 4 * d - 1 : 4 * d; };
  auto face_half = [](Dart d) -> Dart { return (d & 1) ? 4 * d + 3 : 4 * d + 5; };

  const std::size_t rn = 4 * n;
  std::vector<Dart> sigma(rn), alpha(rn);
  std::vector<VertexId> origin(rn);
  const auto s_vertex = [nv](std::size_t k) { return static_cast<VertexId>(nv + k); };
  const auto f_vertex = [nv, ne](std::int32_t f) { return static_cast<VertexId>(nv + ne + static_cast<std::size_t>(f)); };

  for (std::size_t k = 0; k < ne; ++k) {
    const Dart b = static_cast<Dart>(8 * k);
    origin[static_cast<std::size_t>(b + 0)] = map.origin(static_cast<Dart>(2 * k));
    origin[static_cast<std::size_t>(b + 1)] = s_vertex(k);
    origin[static_cast<std::size_t>(b + 2)] = s_vertex(k);
    origin[static_cast<std::size_t>(b + 3)] = map.origin(static_cast<Dart>(2 * k + 1));
    origin[static_cast<std::size_t>(b + 4)] = s_vertex(k);
    origin[static_cast<std::size_t>(b + 5)] = f_vertex(face[2 * k]);
    origin[static_cast<std::size_t>(b + 6)] = s_vertex(k);
    origin[static_cast<std::size_t>(b + 7)] = f_vertex(face[2 * k + 1]);
    // Anti-clockwise around s_k: ahead, left face, back, right face.
    sigma[static_cast<std::size_t>(b + 2)] = b + 6;
    sigma[static_cast<std::size_t>(b + 6)] = b + 1;
    sigma[static_cast<std::size_t>(b + 1)] = b + 4;
    sigma[static_cast<std::size_t>(b + 4)] = b + 2;
  }
  for (std::size_t d = 0; d < n; ++d) {
    const Dart dd = static_cast<Dart>(d);
    sigma[static_cast<std::size_t>(vertex_half(dd))] = vertex_half(map.sigma(dd));
    // Clockwise facial walks turn into anti-clockwise rotations at dual vertices.
    sigma[static_cast<std::size_t>(face_half(dd))] = face_half(phi_inv[d]);
  }
  for (std::size_t d = 0; d < rn; ++d) alpha[d] = partner_dart(static_cast<Dart>(d));

  std::vector<std::string> vnames = map.vertex_names();
  for (std::size_t k = 0; k < ne; ++k) vnames.push_back(map.edge_name(static_cast<EdgeId>(k)));
  for (std::size_t f = 0; f < nf; ++f) vnames.push_back(face_name(f, nv));
  std::vector<std::string> enames;
  for (std::size_t k = 0; k < ne; ++k) {
    const auto& e = map.edge_name(static_cast<EdgeId>(k));
    const auto es = dual_edge_name(e);
    enames.insert(enames.end(), {e + ".0", e + ".1", es + ".0", es + ".1"});
  }

  RefinedMap out;
  out.base = EmbeddedMap(std::move(sigma), std::move(alpha), std::move(origin), std::move(vnames),
                         std::move(enames), map.orientation());
  out.level_of_vertex.assign(nv, Level::kVertex);
  out.level_of_vertex.insert(out.level_of_vertex.end(), ne, Level::kIntersection);
  out.level_of_vertex.insert(out.level_of_vertex.end(), nf, Level::kFace);
  for (std::size_t k = 0; k < ne; ++k) {
    out.intersection_of.emplace_back(static_cast<EdgeId>(k), static_cast<EdgeId>(k));
  }
  return out;
}

std::size_t PGraph::level_size(Level level) const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [level](const PGraphNode& n) { return n.level == level; }));
}

std::size_t PGraph::out_degree(std::size_t node) const {
  return static_cast<std::size_t>(std::count_if(
      arcs.begin(), arcs.end(), [node](const auto& a) { return a.first == node; }));
}

PGraph abstract_p_graph(const EmbeddedMap& map) {
  const RefinedMap refined = refinement(map);
  PGraph g;
  for (std::size_t v = 0; v < refined.level_of_vertex.size(); ++v) {
    g.nodes.push_back({refined.level_of_vertex[v], refined.base.vertex_name(static_cast<VertexId>(v))});
  }
  const auto& base = refined.base;
  for (std::size_t e = 0; e < base.num_edges(); ++e) {
    auto u = static_cast<std::size_t>(base.origin(static_cast<Dart>(2 * e)));
    auto w = static_cast<std::size_t>(base.origin(static_cast<Dart>(2 * e + 1)));
    if (g.nodes[u].level > g.nodes[w].level) std::swap(u, w);
    g.arcs.emplace_back(u, w);
  }
  return g;
}

}  // namespace newton_maps
