#include "newton_maps/canon.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

#include "newton_maps/naming.hpp"

namespace newton_maps {

namespace {

constexpr std::int32_t kUnseen = -1;

// Writes the trace rooted at `root` into `out`. When `bound` is given, stops
// as soon as the trace is known to be lexicographically greater than it and
// returns +1; returns -1 if strictly smaller, 0 if equal.
int trace_against(std::span<const Dart> sigma, std::span<const Dart> alpha, Dart root,
                  const std::vector<std::int32_t>* bound, std::vector<std::int32_t>& out,
                  std::vector<std::int32_t>& index, std::vector<Dart>& order) {
  const std::size_t n = sigma.size();
  index.assign(n, kUnseen);
  order.clear();
  out.clear();
  index[static_cast<std::size_t>(root)] = 0;
  order.push_back(root);
  int cmp = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Dart d = order[head];
    for (Dart x : {sigma[static_cast<std::size_t>(d)], alpha[static_cast<std::size_t>(d)]}) {
      auto& slot = index[static_cast<std::size_t>(x)];
      if (slot == kUnseen) {
        slot = static_cast<std::int32_t>(order.size());
        order.push_back(x);
      }
      out.push_back(slot);
      if (bound && cmp == 0) {
        const std::int32_t ref = (*bound)[out.size() - 1];
        if (slot > ref) return 1;
        if (slot < ref) cmp = -1;
      }
    }
  }
  return cmp;
}

struct SideBest {
  std::vector<std::int32_t> trace;
  Dart root = 0;
};

SideBest best_over_roots(std::span<const Dart> sigma, std::span<const Dart> alpha) {
  SideBest best;
  std::vector<std::int32_t> scratch, index;
  std::vector<Dart> order;
  for (std::size_t r = 0; r < sigma.size(); ++r) {
    const bool first = r == 0;
    const int cmp = trace_against(sigma, alpha, static_cast<Dart>(r),
                                  first ? nullptr : &best.trace, scratch, index, order);
    if (first || cmp < 0) {
      best.trace = scratch;
      best.root = static_cast<Dart>(r);
    }
  }
  return best;
}

}  // namespace

std::string CanonicalKey::hex() const {
  std::string out;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02x", reflection_allowed ? 1 : 0);
  out += buf;
  std::snprintf(buf, sizeof buf, "%04x", static_cast<unsigned>(trace.size() / 2));
  out += buf;
  for (std::int32_t t : trace) {
    std::snprintf(buf, sizeof buf, "%04x", static_cast<unsigned>(t));
    out += buf;
  }
  return out;
}

CanonicalKey CanonicalKey::from_hex(const std::string& text) {
  auto field = [&text](std::size_t pos, std::size_t width) {
    if (pos + width > text.size()) throw InputError("truncated canonical key");
    return static_cast<std::int32_t>(std::stoul(text.substr(pos, width), nullptr, 16));
  };
  CanonicalKey key;
  key.reflection_allowed = field(0, 2) != 0;
  const auto darts = static_cast<std::size_t>(field(2, 4));
  if (text.size() != 6 + 8 * darts) throw InputError("canonical key length mismatch");
  for (std::size_t i = 0; i < 2 * darts; ++i) key.trace.push_back(field(6 + 4 * i, 4));
  return key;
}

std::vector<std::int32_t> dart_trace(std::span<const Dart> sigma, std::span<const Dart> alpha,
                                     Dart root, std::vector<Dart>* order) {
  std::vector<std::int32_t> out, index;
  std::vector<Dart> local;
  trace_against(sigma, alpha, root, nullptr, out, index, order ? *order : local);
  return out;
}

MinimalTrace minimal_trace(std::span<const Dart> sigma, std::span<const Dart> alpha) {
  auto best = best_over_roots(sigma, alpha);
  return {std::move(best.trace), best.root};
}

CanonicalKey canonical_key(std::span<const Dart> sigma, std::span<const Dart> alpha,
                           bool allow_reflection) {
  CanonicalKey key;
  key.reflection_allowed = allow_reflection;
  key.trace = best_over_roots(sigma, alpha).trace;
  if (allow_reflection) {
    const auto inv = inverse_permutation(sigma);
    auto mirrored = best_over_roots(inv, alpha);
    if (mirrored.trace < key.trace) key.trace = std::move(mirrored.trace);
  }
  return key;
}

CanonicalKey canonical_key(const EmbeddedMap& map, bool allow_reflection) {
  return canonical_key(map.sigma_perm(), map.alpha_perm(), allow_reflection);
}

std::optional<Isomorphism> are_equivalent(const EmbeddedMap& a, const EmbeddedMap& b,
                                          bool allow_reflection) {
  if (a.num_darts() != b.num_darts()) return std::nullopt;
  const std::vector<Dart> sigma_a(a.sigma_perm().begin(), a.sigma_perm().end());
  const std::vector<Dart> sigma_b(b.sigma_perm().begin(), b.sigma_perm().end());
  const auto inv_a = inverse_permutation(sigma_a);
  const auto inv_b = inverse_permutation(sigma_b);

  // Side 0 is the map itself, side 1 its mirror.
  auto pick = [&](const std::vector<Dart>& fwd, const std::vector<Dart>& inv,
                  std::span<const Dart> alpha) {
    auto best = best_over_roots(fwd, alpha);
    int side = 0;
    if (allow_reflection) {
      auto m = best_over_roots(inv, alpha);
      if (m.trace < best.trace) {
        best = std::move(m);
        side = 1;
      }
    }
    return std::pair{std::move(best), side};
  };
  auto [best_a, side_a] = pick(sigma_a, inv_a, a.alpha_perm());
  auto [best_b, side_b] = pick(sigma_b, inv_b, b.alpha_perm());
  if (best_a.trace != best_b.trace) return std::nullopt;

  std::vector<Dart> order_a, order_b;
  dart_trace(side_a ? inv_a : sigma_a, a.alpha_perm(), best_a.root, &order_a);
  dart_trace(side_b ? inv_b : sigma_b, b.alpha_perm(), best_b.root, &order_b);
  Isomorphism iso;
  iso.reverses = side_a != side_b;
  iso.dart_map.assign(a.num_darts(), -1);
  for (std::size_t i = 0; i < order_a.size(); ++i) {
    iso.dart_map[static_cast<std::size_t>(order_a[i])] = order_b[i];
  }
  return iso;
}

bool verify_witness(const EmbeddedMap& a, const EmbeddedMap& b, const Isomorphism& iso) {
  const std::size_t n = a.num_darts();
  if (b.num_darts() != n || iso.dart_map.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Dart y : iso.dart_map) {
    if (y < 0 || static_cast<std::size_t>(y) >= n || hit[static_cast<std::size_t>(y)]) return false;
    hit[static_cast<std::size_t>(y)] = 1;
  }
  const auto inv_a = inverse_permutation(a.sigma_perm());
  const auto& w = iso.dart_map;
  for (std::size_t d = 0; d < n; ++d) {
    const Dart s = iso.reverses ? inv_a[d] : a.sigma(static_cast<Dart>(d));
    if (b.sigma(w[d]) != w[static_cast<std::size_t>(s)]) return false;
    if (b.alpha(w[d]) != w[static_cast<std::size_t>(a.alpha(static_cast<Dart>(d)))]) return false;
  }
  return true;
}

EmbeddedMap canonical_form(const EmbeddedMap& map) {
  const std::size_t n = map.num_darts();
  const auto best = best_over_roots(map.sigma_perm(), map.alpha_perm());
  std::vector<Dart> order;
  dart_trace(map.sigma_perm(), map.alpha_perm(), best.root, &order);

  std::vector<Dart> relabel(n, -1);
  std::vector<VertexId> vertex_relabel(map.num_vertices(), -1);
  Dart next_dart = 0;
  VertexId next_vertex = 0;
  for (Dart d : order) {
    if (relabel[static_cast<std::size_t>(d)] < 0) {
      relabel[static_cast<std::size_t>(d)] = next_dart;
      relabel[static_cast<std::size_t>(map.alpha(d))] = next_dart + 1;
      next_dart += 2;
    }
    auto& v = vertex_relabel[static_cast<std::size_t>(map.origin(d))];
    if (v < 0) v = next_vertex++;
  }

  std::vector<Dart> sigma(n), alpha(n);
  std::vector<VertexId> origin(n);
  for (std::size_t d = 0; d < n; ++d) {
    const auto nd = static_cast<std::size_t>(relabel[d]);
    sigma[nd] = relabel[static_cast<std::size_t>(map.sigma(static_cast<Dart>(d)))];
    alpha[nd] = partner_dart(static_cast<Dart>(nd));
    origin[nd] = vertex_relabel[static_cast<std::size_t>(map.origin(static_cast<Dart>(d)))];
  }
  std::vector<std::string> vnames, enames;
  for (std::size_t v = 0; v < map.num_vertices(); ++v) vnames.push_back(default_vertex_name(v));
  for (std::size_t k = 0; k < n / 2; ++k) enames.push_back(default_edge_name(k, n / 2));
  return EmbeddedMap(std::move(sigma), std::move(alpha), std::move(origin), std::move(vnames),
                     std::move(enames), map.orientation());
}

namespace {

bool propagate(std::span<const Dart> sigma_a, std::span<const Dart> alpha_a,
               std::span<const Dart> sigma_b, std::span<const Dart> alpha_b, Dart target) {
  const std::size_t n = sigma_a.size();
  std::vector<Dart> fwd(n, -1), back(n, -1);
  std::vector<Dart> work;
  auto assign = [&](Dart x, Dart y) {
    auto& fx = fwd[static_cast<std::size_t>(x)];
    auto& by = back[static_cast<std::size_t>(y)];
    if (fx == -1 && by == -1) {
      fx = y;
      by = x;
      work.push_back(x);
      return true;
    }
    return fx == y && by == x;
  };
  if (!assign(0, target)) return false;
  std::size_t mapped = 0;
  while (!work.empty()) {
    const Dart x = work.back();
    work.pop_back();
    ++mapped;
    const Dart y = fwd[static_cast<std::size_t>(x)];
    if (!assign(sigma_a[static_cast<std::size_t>(x)], sigma_b[static_cast<std::size_t>(y)])) return false;
    if (!assign(alpha_a[static_cast<std::size_t>(x)], alpha_b[static_cast<std::size_t>(y)])) return false;
  }
  return mapped == n;
}

}  // namespace

bool brute_force_iso(std::span<const Dart> sigma_a, std::span<const Dart> alpha_a,
                     std::span<const Dart> sigma_b, std::span<const Dart> alpha_b,
                     bool allow_reflection) {
  if (sigma_a.size() > kBruteForceDartLimit || sigma_b.size() > kBruteForceDartLimit) {
    throw std::length_error("brute_force_iso: too many darts for the exhaustive oracle");
  }
  if (sigma_a.size() != sigma_b.size()) return false;
  if (sigma_a.empty()) return true;
  const auto inv_b = inverse_permutation(sigma_b);
  for (std::size_t t = 0; t < sigma_b.size(); ++t) {
    if (propagate(sigma_a, alpha_a, sigma_b, alpha_b, static_cast<Dart>(t))) return true;
    if (allow_reflection && propagate(sigma_a, alpha_a, inv_b, alpha_b, static_cast<Dart>(t))) {
      return true;
    }
  }
  return false;
}

bool brute_force_iso(const EmbeddedMap& a, const EmbeddedMap& b, bool allow_reflection) {
  return brute_force_iso(a.sigma_perm(), a.alpha_perm(), b.sigma_perm(), b.alpha_perm(),
                         allow_reflection);
}

}  // namespace newton_maps
