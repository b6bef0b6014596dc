#include "newton_maps/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "newton_maps/duality.hpp"
#include "newton_maps/naming.hpp"
#include "newton_maps/newton.hpp"

namespace newton_maps {

bool is_certified_order(int order) { return order >= kMinOrder && order <= kMaxCertifiedOrder; }

void require_supported_order(int order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw UnsupportedOrder("unsupported order " + std::to_string(order) + " (supported: " +
                           std::to_string(kMinOrder) + ".." + std::to_string(kMaxOrder) + ")");
  }
}

std::vector<Multiplicity> multiplicity_vectors(int order) {
  require_supported_order(order);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) pairs.emplace_back(i, j);

  std::vector<Multiplicity> out;
  Multiplicity m(pairs.size(), 0);
  const int edges = 2 * order;
  std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
    if (slot + 1 == pairs.size()) {
      m[slot] = left;
      std::vector<int> deg(static_cast<std::size_t>(order), 0);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        deg[static_cast<std::size_t>(pairs[p].first)] += m[p];
        deg[static_cast<std::size_t>(pairs[p].second)] += m[p];
      }
      if (std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 2; })) out.push_back(m);
      return;
    }
    for (int c = left; c >= 0; --c) {
      m[slot] = c;
      rec(slot + 1, left - c);
    }
  };
  rec(0, edges);
  return out;
}

EmbeddedMap multigraph_frame(int order, const Multiplicity& multiplicity) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) pairs.emplace_back(i, j);
  std::vector<VertexId> origin;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (int c = 0; c < multiplicity[p]; ++c) {
      origin.push_back(pairs[p].first);
      origin.push_back(pairs[p].second);
    }
  }
  const std::size_t n = origin.size();
  std::vector<Dart> alpha(n);
  for (std::size_t d = 0; d < n; ++d) alpha[d] = partner_dart(static_cast<Dart>(d));
  std::vector<std::string> vnames, enames;
  for (int v = 0; v < order; ++v) vnames.push_back(default_vertex_name(static_cast<std::size_t>(v)));
  for (std::size_t k = 0; k < n / 2; ++k) enames.push_back(default_edge_name(k, n / 2));
  return EmbeddedMap({}, std::move(alpha), std::move(origin), std::move(vnames), std::move(enames));
}

void for_each_rotation_system(const EmbeddedMap& frame, bool fix_first_dart,
                              const std::function<void(std::span<const Dart>)>& fn) {
  const std::size_t n = frame.origins().size();
  const std::size_t nv = frame.num_vertices();
  std::vector<std::vector<Dart>> at(nv);
  for (std::size_t d = 0; d < n; ++d) at[static_cast<std::size_t>(frame.origin(static_cast<Dart>(d)))].push_back(static_cast<Dart>(d));

  std::vector<std::vector<std::vector<Dart>>> options(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Dart> cyc = at[v];
    if (cyc.empty()) return;
    const auto first = fix_first_dart ? cyc.begin() + 1 : cyc.begin();
    do {
      options[v].push_back(cyc);
    } while (std::next_permutation(first, cyc.end()));
  }

  std::vector<Dart> sigma(n);
  std::vector<std::size_t> pick(nv, 0);
  while (true) {
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& cyc = options[v][pick[v]];
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        sigma[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
      }
    }
    fn(sigma);
    std::size_t v = 0;
    while (v < nv && ++pick[v] == options[v].size()) pick[v++] = 0;
    if (v == nv) break;
  }
}

namespace {

EmbeddedMap with_sigma(const EmbeddedMap& frame, std::span<const Dart> sigma) {
  return EmbeddedMap(std::vector<Dart>(sigma.begin(), sigma.end()),
                     std::vector<Dart>(frame.alpha_perm().begin(), frame.alpha_perm().end()),
                     std::vector<VertexId>(frame.origins().begin(), frame.origins().end()),
                     frame.vertex_names(), frame.edge_names(), frame.orientation());
}

// Number of phi-orbits with alpha(d) = d ^ 1.
std::size_t count_faces(std::span<const Dart> sigma, std::vector<char>& seen) {
  seen.assign(sigma.size(), 0);
  std::size_t faces = 0;
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    if (seen[s]) continue;
    ++faces;
    auto d = static_cast<Dart>(s);
    while (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = 1;
      d = sigma[static_cast<std::size_t>(partner_dart(d))];
    }
  }
  return faces;
}

struct WorkerResult {
  EnumerationStats stats;
  std::map<CanonicalKey, EmbeddedMap> classes;  // keyed by orientation-preserving key
};

WorkerResult enumerate_vector(int order, const Multiplicity& m, bool fix_first_dart) {
  WorkerResult result;
  const EmbeddedMap frame = multigraph_frame(order, m);
  std::vector<char> seen;
  for_each_rotation_system(frame, fix_first_dart, [&](std::span<const Dart> sigma) {
    ++result.stats.candidates;
    if (count_faces(sigma, seen) != static_cast<std::size_t>(order)) return;
    if (!is_connected(sigma, frame.alpha_perm())) return;
    ++result.stats.toroidal;
    EmbeddedMap map = with_sigma(frame, sigma);
    const Verdict verdict = is_newton(map, order).verdict;
    if (verdict == Verdict::kNotNewton) return;
    ++result.stats.accepted;
    auto key = canonical_key(map, false);
    if (!result.classes.count(key)) result.classes.emplace(std::move(key), canonical_form(map));
  });
  return result;
}

}  // namespace

void for_each_candidate(int order, bool fix_first_dart,
                        const std::function<void(const EmbeddedMap&)>& fn) {
  for (const auto& m : multiplicity_vectors(order)) {
    const EmbeddedMap frame = multigraph_frame(order, m);
    for_each_rotation_system(frame, fix_first_dart,
                             [&](std::span<const Dart> sigma) { fn(with_sigma(frame, sigma)); });
  }
}

std::vector<int> vertex_pattern_on_max_face(const EmbeddedMap& map) {
  std::vector<int> best;
  std::size_t best_len = 0;
  for (const auto& w : facial_walks(map)) {
    std::vector<int> count(map.num_vertices(), 0);
    for (VertexId v : w.vertices) ++count[static_cast<std::size_t>(v)];
    std::vector<int> pattern;
    for (int c : count)
      if (c > 0) pattern.push_back(c);
    std::sort(pattern.begin(), pattern.end(), std::greater<>());
    if (w.length() > best_len || (w.length() == best_len && pattern > best)) {
      best_len = w.length();
      best = std::move(pattern);
    }
  }
  return best;
}

AtlasEntry make_atlas_entry(const EmbeddedMap& map) {
  AtlasEntry e;
  e.key = canonical_key(map, true);
  e.key_op = canonical_key(map, false);
  e.representative = canonical_form(map);
  e.delta = degree_sequence(map);
  e.delta_star = face_degree_sequence(map);
  e.max_face = e.delta_star.empty() ? 0 : e.delta_star.front();
  e.vertex_pattern = vertex_pattern_on_max_face(map);
  const auto sd = self_duality(map);
  e.self_dual = sd.with_reflection;
  e.self_dual_op = sd.orientation_preserving;
  e.dual_key = canonical_key(dual(map), true);
  return e;
}

Enumeration enumerate_newton(const EnumerationOptions& options) {
  require_supported_order(options.order);
  const auto vectors = multiplicity_vectors(options.order);
  std::vector<WorkerResult> results(vectors.size());

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(vectors.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < vectors.size(); i = next++) {
      results[i] = enumerate_vector(options.order, vectors[i], options.fix_first_dart);
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }

  Enumeration out;
  out.order = options.order;
  out.certified = is_certified_order(options.order);
  out.stats.multiplicity_vectors = vectors.size();
  std::map<CanonicalKey, EmbeddedMap> classes;
  for (auto& r : results) {
    out.stats.candidates += r.stats.candidates;
    out.stats.toroidal += r.stats.toroidal;
    out.stats.accepted += r.stats.accepted;
    for (auto& [key, map] : r.classes) classes.emplace(key, std::move(map));
  }
  for (const auto& [key, map] : classes) out.entries.push_back(make_atlas_entry(map));
  std::sort(out.entries.begin(), out.entries.end(), [](const AtlasEntry& a, const AtlasEntry& b) {
    return std::tie(a.key, a.key_op) < std::tie(b.key, b.key_op);
  });

  if (options.order == 3) {
    for (const auto& e : out.entries) {
      if (e.max_face < 4 || e.max_face > 6) {
        throw ConsistencyError("order-3 Newton map with largest face " +
                               std::to_string(e.max_face) + " (expected 4..6)");
      }
    }
  }
  return out;
}

const Stratum* StrataSummary::find(int max_face, const std::vector<int>& pattern) const {
  for (const auto& s : strata)
    if (s.max_face == max_face && s.vertex_pattern == pattern) return &s;
  return nullptr;
}

std::size_t StrataSummary::op_classes_with_max_face(int max_face) const {
  std::size_t n = 0;
  for (const auto& s : strata)
    if (s.max_face == max_face) n += s.op_classes;
  return n;
}

std::size_t StrataSummary::refl_classes_with_max_face(int max_face) const {
  std::size_t n = 0;
  for (const auto& s : strata)
    if (s.max_face == max_face) n += s.refl_classes;
  return n;
}

namespace {

struct ReflClass {
  const AtlasEntry* entry = nullptr;
  std::size_t op_count = 0;
};

std::map<CanonicalKey, ReflClass> group_by_reflection_key(const std::vector<AtlasEntry>& entries) {
  std::map<CanonicalKey, ReflClass> groups;
  for (const auto& e : entries) {
    auto& g = groups[e.key];
    if (!g.entry) g.entry = &e;
    ++g.op_count;
  }
  return groups;
}

bool is_dual_only(const AtlasEntry& e) {
  return !e.delta.empty() && e.delta.front() > e.max_face;
}

}  // namespace

StrataSummary strata_check(const std::vector<AtlasEntry>& entries) {
  const auto groups = group_by_reflection_key(entries);
  std::map<std::pair<int, std::vector<int>>, Stratum> strata;
  StrataSummary summary;

  auto slot_of = [&](const AtlasEntry& e) -> Stratum& {
    if (is_dual_only(e)) return summary.dual_only;
    auto& s = strata[{e.max_face, e.vertex_pattern}];
    s.max_face = e.max_face;
    s.vertex_pattern = e.vertex_pattern;
    return s;
  };

  for (const auto& [key, g] : groups) {
    Stratum& s = slot_of(*g.entry);
    s.op_classes += g.op_count;
    s.refl_classes += 1;
    if (g.entry->self_dual) s.self_dual_classes += 1;
    s.reflection_merges += g.op_count - 1;
  }
  for (const auto& [key, g] : groups) {
    const AtlasEntry& e = *g.entry;
    if (e.self_dual || !(key < e.dual_key)) continue;
    const auto it = groups.find(e.dual_key);
    if (it == groups.end()) continue;
    const AtlasEntry& d = *it->second.entry;
    if (is_dual_only(e) || is_dual_only(d)) continue;
    if (e.max_face == d.max_face && e.vertex_pattern == d.vertex_pattern) {
      strata[{e.max_face, e.vertex_pattern}].dual_pairs += 1;
    }
  }
  for (auto& [k, s] : strata) summary.strata.push_back(s);
  std::sort(summary.strata.begin(), summary.strata.end(), [](const Stratum& a, const Stratum& b) {
    return std::tie(b.max_face, b.vertex_pattern) < std::tie(a.max_face, a.vertex_pattern);
  });
  return summary;
}

ClassificationReport classify(const std::vector<AtlasEntry>& entries) {
  ClassificationReport report;
  if (!entries.empty()) report.order = static_cast<int>(entries.front().representative.num_vertices());
  report.certified = is_certified_order(report.order);

  std::set<CanonicalKey> op_keys;
  for (const auto& e : entries) op_keys.insert(e.key_op);
  report.count_op = op_keys.size();

  const auto groups = group_by_reflection_key(entries);
  report.count_refl = groups.size();

  std::set<CanonicalKey> duality_classes;
  for (const auto& [key, g] : groups) {
    const AtlasEntry& e = *g.entry;
    if (!groups.count(e.dual_key)) {
      throw ConsistencyError("dual of atlas entry " + key.hex() + " is missing from the atlas");
    }
    if ((e.dual_key == key) != e.self_dual) {
      throw ConsistencyError("self-duality flag disagrees with dual key for " + key.hex());
    }
    if (e.self_dual) {
      ++report.self_dual_count;
    } else if (key < e.dual_key) {
      report.dual_pairs.emplace_back(key, e.dual_key);
    }
    duality_classes.insert(std::min(key, e.dual_key));
  }
  report.count_dual = duality_classes.size();
  report.strata = strata_check(entries);
  return report;
}

namespace {

std::string stratum_code(const AtlasEntry& e) {
  std::string code;
  switch (e.max_face) {
    case 6: code = "H"; break;
    case 5: code = "P"; break;
    case 4: code = "Q"; break;
    default: code = "F" + std::to_string(e.max_face) + ":"; break;
  }
  for (int c : e.vertex_pattern) code += std::to_string(c);
  return code;
}

}  // namespace

std::vector<DualityClassLabel> label_atlas(std::vector<AtlasEntry>& entries) {
  const auto groups = group_by_reflection_key(entries);
  std::set<CanonicalKey> duality_classes;
  for (const auto& [key, g] : groups) duality_classes.insert(std::min(key, g.entry->dual_key));
  if (!entries.empty() && entries.front().representative.num_vertices() == 3 &&
      (groups.size() != 12 || duality_classes.size() != 9)) {
    throw ConsistencyError("order-3 atlas has " + std::to_string(groups.size()) +
                           " reflection classes and " + std::to_string(duality_classes.size()) +
                           " duality classes (expected 12 and 9)");
  }

  struct Member {
    const AtlasEntry* primary;
    std::optional<CanonicalKey> partner;
  };
  std::map<std::string, std::vector<Member>> by_code;
  for (const auto& [key, g] : groups) {
    const AtlasEntry& e = *g.entry;
    if (e.self_dual) {
      by_code[stratum_code(e)].push_back({&e, std::nullopt});
      continue;
    }
    if (!(key < e.dual_key)) continue;
    const auto it = groups.find(e.dual_key);
    if (it == groups.end()) throw ConsistencyError("dual of " + key.hex() + " missing from atlas");
    const AtlasEntry& d = *it->second.entry;
    const AtlasEntry* primary = (is_dual_only(e) && !is_dual_only(d)) ? &d : &e;
    const AtlasEntry* other = primary == &e ? &d : &e;
    by_code[stratum_code(*primary)].push_back({primary, other->key});
  }

  auto invariants = [](const AtlasEntry& e) {
    return std::tie(e.delta, e.delta_star, e.self_dual);
  };
  std::vector<DualityClassLabel> labels;
  for (auto& [code, members] : by_code) {
    std::sort(members.begin(), members.end(), [&](const Member& a, const Member& b) {
      return std::tuple(invariants(*a.primary), a.primary->key) <
             std::tuple(invariants(*b.primary), b.primary->key);
    });
    std::size_t i = 0;
    while (i < members.size()) {
      std::size_t j = i + 1;
      while (j < members.size() && invariants(*members[j].primary) == invariants(*members[i].primary)) ++j;
      std::string label = code + "-";
      if (j - i == 1) {
        label += std::to_string(i + 1);
      } else {
        label += "{";
        for (std::size_t k = i; k < j; ++k) label += (k > i ? "," : "") + std::to_string(k + 1);
        label += "}";
      }
      for (std::size_t k = i; k < j; ++k) {
        labels.push_back({label, j - i > 1, members[k].primary->key, members[k].partner});
      }
      i = j;
    }
  }

  for (auto& e : entries) {
    for (const auto& l : labels) {
      if (e.key == l.key) {
        e.label = l.label;
        e.label_ambiguous = l.ambiguous;
      } else if (l.dual_key && e.key == *l.dual_key) {
        e.label = l.label + "*";
        e.label_ambiguous = l.ambiguous;
      }
    }
  }
  return labels;
}

}  // namespace newton_maps
