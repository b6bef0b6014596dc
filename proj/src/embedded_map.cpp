#include "newton_maps/embedded_map.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "newton_maps/naming.hpp"

namespace newton_maps {

Orientation flipped(Orientation o) {
  return o == Orientation::kClockwiseFaces ? Orientation::kAnticlockwiseFaces
                                           : Orientation::kClockwiseFaces;
}

EmbeddedMap::EmbeddedMap(std::vector<Dart> sigma, std::vector<Dart> alpha,
                         std::vector<VertexId> origin,
                         std::vector<std::string> vertex_names,
                         std::vector<std::string> edge_names,
                         Orientation orientation)
    : sigma_(std::move(sigma)),
      alpha_(std::move(alpha)),
      origin_(std::move(origin)),
      vertex_names_(std::move(vertex_names)),
      edge_names_(std::move(edge_names)),
      orientation_(orientation) {}

EmbeddedMap EmbeddedMap::from_sigma(std::vector<Dart> sigma) {
  const std::size_t n = sigma.size();
  std::vector<Dart> alpha(n);
  for (std::size_t d = 0; d < n; ++d) alpha[d] = partner_dart(static_cast<Dart>(d));
  std::vector<VertexId> origin(n, -1);
  VertexId next = 0;
  for (std::size_t d = 0; d < n; ++d) {
    if (origin[d] >= 0) continue;
    Dart x = static_cast<Dart>(d);
    // Out-of-range or non-permutation input is left for validate() to report.
    while (x >= 0 && static_cast<std::size_t>(x) < n && origin[static_cast<std::size_t>(x)] < 0) {
      origin[static_cast<std::size_t>(x)] = next;
      x = sigma[static_cast<std::size_t>(x)];
    }
    ++next;
  }
  std::vector<std::string> vnames;
  for (VertexId v = 0; v < next; ++v) vnames.push_back(default_vertex_name(v));
  std::vector<std::string> enames;
  for (std::size_t k = 0; k < n / 2; ++k) enames.push_back(default_edge_name(k, n / 2));
  return EmbeddedMap(std::move(sigma), std::move(alpha), std::move(origin),
                     std::move(vnames), std::move(enames));
}

std::vector<Dart> EmbeddedMap::rotation_at(VertexId v) const {
  Dart start = -1;
  for (std::size_t d = 0; d < origin_.size(); ++d) {
    if (origin_[d] == v) {
      start = static_cast<Dart>(d);
      break;
    }
  }
  std::vector<Dart> out;
  if (start < 0) return out;
  Dart d = start;
  do {
    out.push_back(d);
    d = sigma(d);
  } while (d != start && out.size() <= sigma_.size());
  return out;
}

std::size_t EmbeddedMap::degree(VertexId v) const {
  return static_cast<std::size_t>(std::count(origin_.begin(), origin_.end(), v));
}

std::string_view defect_tag(DefectKind kind) {
  switch (kind) {
    case DefectKind::kSizeMismatch: return "size-mismatch";
    case DefectKind::kDartOutOfRange: return "dart-out-of-range";
    case DefectKind::kSigmaNotPermutation: return "sigma-not-permutation";
    case DefectKind::kAlphaFixedPoint: return "alpha-fixed-point";
    case DefectKind::kAlphaNotInvolution: return "alpha-not-involution";
    case DefectKind::kAlphaNotEdgePairing: return "alpha-not-edge-pairing";
    case DefectKind::kOriginOutOfRange: return "origin-out-of-range";
    case DefectKind::kOriginMismatch: return "origin-mismatch";
    case DefectKind::kVertexSplit: return "vertex-split";
    case DefectKind::kEmptyVertex: return "empty-vertex";
    case DefectKind::kDisconnected: return "disconnected";
    case DefectKind::kLoopPresent: return "loop-present";
    case DefectKind::kDegreeOneVertex: return "degree-1-vertex";
  }
  return "unknown";
}

bool is_advisory(DefectKind kind) {
  return kind == DefectKind::kLoopPresent || kind == DefectKind::kDegreeOneVertex;
}

bool ValidationReport::has(DefectKind kind) const {
  return std::any_of(defects.begin(), defects.end(),
                     [kind](const Defect& d) { return d.kind == kind; });
}

bool is_connected(std::span<const Dart> sigma, std::span<const Dart> alpha) {
  const std::size_t n = sigma.size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Dart> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Dart d = stack.back();
    stack.pop_back();
    for (Dart x : {sigma[static_cast<std::size_t>(d)], alpha[static_cast<std::size_t>(d)]}) {
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        ++reached;
        stack.push_back(x);
      }
    }
  }
  return reached == n;
}

std::vector<Dart> inverse_permutation(std::span<const Dart> perm) {
  std::vector<Dart> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    inv[static_cast<std::size_t>(perm[i])] = static_cast<Dart>(i);
  }
  return inv;
}

ValidationReport validate(const EmbeddedMap& map) {
  ValidationReport report;
  auto fatal = [&report](DefectKind kind, std::int64_t subject, std::string detail) {
    report.ok = false;
    report.defects.push_back({kind, subject, std::move(detail)});
  };

  const auto sigma = map.sigma_perm();
  const auto alpha = map.alpha_perm();
  const auto origin = map.origins();
  const std::size_t n = sigma.size();
  const std::size_t nv = map.num_vertices();

  if (alpha.size() != n || origin.size() != n || n % 2 != 0 ||
      map.edge_names().size() != n / 2) {
    fatal(DefectKind::kSizeMismatch, -1,
          "dart arrays, edge names and vertex origins disagree in size");
    return report;
  }

  bool perms_ok = true;
  std::vector<int> hits(n, 0);
  for (std::size_t d = 0; d < n; ++d) {
    if (sigma[d] < 0 || static_cast<std::size_t>(sigma[d]) >= n) {
      fatal(DefectKind::kDartOutOfRange, static_cast<std::int64_t>(d), "sigma image out of range");
      perms_ok = false;
    } else {
      ++hits[static_cast<std::size_t>(sigma[d])];
    }
    if (alpha[d] < 0 || static_cast<std::size_t>(alpha[d]) >= n) {
      fatal(DefectKind::kDartOutOfRange, static_cast<std::int64_t>(d), "alpha image out of range");
      perms_ok = false;
    }
  }
  if (!perms_ok) return report;
  for (std::size_t d = 0; d < n; ++d) {
    if (hits[d] != 1) {
      fatal(DefectKind::kSigmaNotPermutation, static_cast<std::int64_t>(d),
            "dart has " + std::to_string(hits[d]) + " sigma preimages");
      perms_ok = false;
    }
  }
  for (std::size_t d = 0; d < n; ++d) {
    const auto a = static_cast<std::size_t>(alpha[d]);
    if (a == d) {
      fatal(DefectKind::kAlphaFixedPoint, static_cast<std::int64_t>(d), "alpha fixes dart");
      perms_ok = false;
    } else if (static_cast<std::size_t>(alpha[a]) != d) {
      fatal(DefectKind::kAlphaNotInvolution, static_cast<std::int64_t>(d), "alpha(alpha(d)) != d");
      perms_ok = false;
    } else if (alpha[d] != partner_dart(static_cast<Dart>(d))) {
      fatal(DefectKind::kAlphaNotEdgePairing, static_cast<std::int64_t>(d),
            "alpha must pair darts 2k and 2k+1");
      perms_ok = false;
    }
  }

  bool origins_ok = true;
  for (std::size_t d = 0; d < n; ++d) {
    if (origin[d] < 0 || static_cast<std::size_t>(origin[d]) >= nv) {
      fatal(DefectKind::kOriginOutOfRange, static_cast<std::int64_t>(d), "origin out of range");
      origins_ok = false;
    }
  }

  if (perms_ok && origins_ok) {
    std::vector<int> cycles_at(nv, 0);
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      const VertexId v = origin[s];
      ++cycles_at[static_cast<std::size_t>(v)];
      std::size_t d = s;
      while (!seen[d]) {
        seen[d] = 1;
        if (origin[d] != v) {
          fatal(DefectKind::kOriginMismatch, static_cast<std::int64_t>(d),
                "sigma cycle mixes vertices " + map.vertex_name(v) + " and " +
                    map.vertex_name(origin[d]));
        }
        d = static_cast<std::size_t>(sigma[d]);
      }
    }
    for (std::size_t v = 0; v < nv; ++v) {
      if (cycles_at[v] == 0) {
        fatal(DefectKind::kEmptyVertex, static_cast<std::int64_t>(v),
              "vertex " + map.vertex_name(static_cast<VertexId>(v)) + " has no darts");
      } else if (cycles_at[v] > 1) {
        fatal(DefectKind::kVertexSplit, static_cast<std::int64_t>(v),
              "vertex " + map.vertex_name(static_cast<VertexId>(v)) + " carries " +
                  std::to_string(cycles_at[v]) + " rotation cycles");
      }
    }
  }

  if (perms_ok && !is_connected(sigma, alpha)) {
    fatal(DefectKind::kDisconnected, -1, "sigma and alpha do not act transitively");
  }

  if (origins_ok) {
    for (std::size_t k = 0; k < n / 2; ++k) {
      if (origin[2 * k] == origin[2 * k + 1]) {
        report.defects.push_back({DefectKind::kLoopPresent, static_cast<std::int64_t>(k),
                                  "edge " + map.edge_name(static_cast<EdgeId>(k)) + " is a loop"});
      }
    }
    for (std::size_t v = 0; v < nv; ++v) {
      if (map.degree(static_cast<VertexId>(v)) == 1) {
        report.defects.push_back(
            {DefectKind::kDegreeOneVertex, static_cast<std::int64_t>(v),
             "vertex " + map.vertex_name(static_cast<VertexId>(v)) + " has degree 1"});
      }
    }
  }
  return report;
}

std::vector<FacialWalk> facial_walks(const EmbeddedMap& map) {
  const std::size_t n = map.num_darts();
  std::vector<char> seen(n, 0);
  std::vector<FacialWalk> walks;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    FacialWalk w;
    Dart d = static_cast<Dart>(s);
    while (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = 1;
      w.darts.push_back(d);
      w.vertices.push_back(map.origin(d));
      w.edges.push_back(edge_of(d));
      d = map.phi(d);
    }
    walks.push_back(std::move(w));
  }
  return walks;
}

std::vector<std::int32_t> face_of_darts(const EmbeddedMap& map) {
  std::vector<std::int32_t> face(map.num_darts(), -1);
  std::int32_t f = 0;
  for (std::size_t s = 0; s < face.size(); ++s) {
    if (face[s] >= 0) continue;
    Dart d = static_cast<Dart>(s);
    while (face[static_cast<std::size_t>(d)] < 0) {
      face[static_cast<std::size_t>(d)] = f;
      d = map.phi(d);
    }
    ++f;
  }
  return face;
}

std::size_t num_faces(const EmbeddedMap& map) {
  const auto face = face_of_darts(map);
  return face.empty() ? 0 : static_cast<std::size_t>(*std::max_element(face.begin(), face.end()) + 1);
}

std::string format_walk(const EmbeddedMap& map, const FacialWalk& walk) {
  std::string out;
  for (std::size_t i = 0; i < walk.length(); ++i) {
    if (i) out += ' ';
    out += map.vertex_name(walk.vertices[i]);
    out += ' ';
    out += map.edge_name(walk.edges[i]);
  }
  return out;
}

EulerData euler_characteristic(const EmbeddedMap& map) {
  EulerData e;
  e.vertices = static_cast<std::int64_t>(map.num_vertices());
  e.edges = static_cast<std::int64_t>(map.num_edges());
  e.faces = static_cast<std::int64_t>(num_faces(map));
  e.chi = e.vertices - e.edges + e.faces;
  e.genus = (2 - e.chi) / 2;
  return e;
}

std::vector<int> degree_sequence(const EmbeddedMap& map) {
  std::vector<int> deg(map.num_vertices(), 0);
  for (VertexId v : map.origins()) ++deg[static_cast<std::size_t>(v)];
  std::sort(deg.begin(), deg.end(), std::greater<>());
  return deg;
}

std::vector<int> face_degree_sequence(const EmbeddedMap& map) {
  std::vector<int> out;
  for (const auto& w : facial_walks(map)) out.push_back(static_cast<int>(w.length()));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

EmbeddedMap mirror(const EmbeddedMap& map) {
  auto sigma = inverse_permutation(map.sigma_perm());
  return EmbeddedMap(std::move(sigma),
                     std::vector<Dart>(map.alpha_perm().begin(), map.alpha_perm().end()),
                     std::vector<VertexId>(map.origins().begin(), map.origins().end()),
                     map.vertex_names(), map.edge_names(), flipped(map.orientation()));
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

EmbeddedMap map_from_facial_walks(const std::vector<WalkLabels>& walks) {
  struct Occurrence {
    std::size_t walk;
    std::size_t pos;
    std::string from;
    std::string to;
  };
  std::vector<std::vector<std::string>> verts(walks.size());
  std::vector<std::vector<std::string>> edges(walks.size());
  std::map<std::string, std::vector<Occurrence>> occurrences;
  std::vector<std::string> edge_order;
  std::set<std::string> vertex_set;

  for (std::size_t w = 0; w < walks.size(); ++w) {
    WalkLabels tokens = walks[w];
    if (tokens.size() >= 3 && tokens.size() % 2 == 1 && tokens.front() == tokens.back()) {
      tokens.pop_back();
    }
    if (tokens.size() < 2 || tokens.size() % 2 != 0) {
      throw InputError("inconsistent polygon: walk " + std::to_string(w + 1) +
                       " does not alternate vertex and edge labels");
    }
    const std::size_t len = tokens.size() / 2;
    for (std::size_t i = 0; i < len; ++i) {
      verts[w].push_back(tokens[2 * i]);
      edges[w].push_back(tokens[2 * i + 1]);
      vertex_set.insert(tokens[2 * i]);
    }
    for (std::size_t i = 0; i < len; ++i) {
      const std::string& e = edges[w][i];
      if (!occurrences.count(e)) edge_order.push_back(e);
      occurrences[e].push_back({w, i, verts[w][i], verts[w][(i + 1) % len]});
    }
  }

  for (const auto& e : edge_order) {
    const auto& occ = occurrences[e];
    if (occ.size() != 2) {
      throw InputError("inconsistent polygon: edge " + e + " appears " +
                       std::to_string(occ.size()) + " times (expected 2)");
    }
    const bool same_ends = occ[0].from == occ[1].from && occ[0].to == occ[1].to;
    const bool reversed = occ[0].from == occ[1].to && occ[0].to == occ[1].from;
    if (!reversed) {
      if (same_ends) {
        throw InputError("non-orientable gluing: edge " + e +
                         " is traversed twice in the same direction");
      }
      throw InputError("inconsistent polygon: edge " + e + " has conflicting endpoints");
    }
  }

  std::vector<std::string> vertex_names(vertex_set.begin(), vertex_set.end());
  std::sort(vertex_names.begin(), vertex_names.end(), natural_less);
  std::map<std::string, VertexId> vertex_index;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) {
    vertex_index[vertex_names[i]] = static_cast<VertexId>(i);
  }

  const std::size_t n = 2 * edge_order.size();
  std::vector<VertexId> origin(n);
  std::map<std::pair<std::size_t, std::size_t>, Dart> dart_at;
  for (std::size_t k = 0; k < edge_order.size(); ++k) {
    const auto& occ = occurrences[edge_order[k]];
    origin[2 * k] = vertex_index[occ[0].from];
    origin[2 * k + 1] = vertex_index[occ[0].to];
    dart_at[{occ[0].walk, occ[0].pos}] = static_cast<Dart>(2 * k);
    dart_at[{occ[1].walk, occ[1].pos}] = static_cast<Dart>(2 * k + 1);
  }

  std::vector<Dart> sigma(n, -1);
  for (std::size_t w = 0; w < walks.size(); ++w) {
    const std::size_t len = edges[w].size();
    for (std::size_t i = 0; i < len; ++i) {
      const Dart d = dart_at[{w, i}];
      const Dart next = dart_at[{w, (i + 1) % len}];
      sigma[static_cast<std::size_t>(partner_dart(d))] = next;
    }
  }
  std::vector<Dart> alpha(n);
  for (std::size_t d = 0; d < n; ++d) alpha[d] = partner_dart(static_cast<Dart>(d));

  EmbeddedMap map(std::move(sigma), std::move(alpha), std::move(origin),
                  std::move(vertex_names), edge_order);
  const auto report = validate(map);
  if (report.has(DefectKind::kVertexSplit)) {
    throw InputError("inconsistent polygon: corners around a vertex do not close into one disk");
  }
  if (report.has(DefectKind::kDisconnected)) {
    throw InputError("disconnected: the polygons glue into more than one surface");
  }
  if (!report.ok) {
    throw InputError("inconsistent polygon: " + report.defects.front().detail);
  }
  return map;
}

}  // namespace newton_maps
