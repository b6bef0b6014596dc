#pragma once

// Canonical forms for oriented maps.
//
// A trace is produced by a breadth-first walk from a root dart: darts are
// numbered in discovery order and, for each dart in that order, the numbers
// of sigma(d) and alpha(d) are emitted. Two connected maps are isomorphic
// (sigma and alpha conjugated by one bijection) iff their minimal traces over
// all roots agree. With reflection allowed the minimum also ranges over the
// roots of the mirror image.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newton_maps/embedded_map.hpp"

namespace newton_maps {

struct CanonicalKey {
  std::vector<std::int32_t> trace;
  bool reflection_allowed = false;

  auto operator<=>(const CanonicalKey&) const = default;

  // Fixed-width hex: flag byte, dart count, then the trace (4 digits each).
  std::string hex() const;
  static CanonicalKey from_hex(const std::string& text);
};

// Trace from one root; the discovery order is written to `order` if given.
std::vector<std::int32_t> dart_trace(std::span<const Dart> sigma, std::span<const Dart> alpha,
                                     Dart root, std::vector<Dart>* order = nullptr);

struct MinimalTrace {
  std::vector<std::int32_t> trace;
  Dart root = 0;
};

MinimalTrace minimal_trace(std::span<const Dart> sigma, std::span<const Dart> alpha);

CanonicalKey canonical_key(std::span<const Dart> sigma, std::span<const Dart> alpha,
                           bool allow_reflection);
CanonicalKey canonical_key(const EmbeddedMap& map, bool allow_reflection);

// Maps darts of `from` onto darts of `to`. When `reverses` is set the
// witness conjugates sigma_from onto sigma_to^{-1}.
struct Isomorphism {
  std::vector<Dart> dart_map;
  bool reverses = false;
};

std::optional<Isomorphism> are_equivalent(const EmbeddedMap& a, const EmbeddedMap& b,
                                          bool allow_reflection);

// Checks sigma_b o w = w o sigma_a^{+-1} and alpha_b o w = w o alpha_a.
bool verify_witness(const EmbeddedMap& a, const EmbeddedMap& b, const Isomorphism& iso);

// Relabels so that edges and vertices follow the orientation-preserving
// canonical discovery order; equivalent maps normalize to identical values.
// Vertices are renamed v1.., edges a.. and the orientation bit is kept.
EmbeddedMap canonical_form(const EmbeddedMap& map);

inline constexpr std::size_t kBruteForceDartLimit = 32;

// Independent oracle: fixes dart 0 of `a`, tries every dart of `b` as its
// image and propagates the forced assignments with a worklist, rejecting on
// the first clash. Throws std::length_error above kBruteForceDartLimit darts.
bool brute_force_iso(std::span<const Dart> sigma_a, std::span<const Dart> alpha_a,
                     std::span<const Dart> sigma_b, std::span<const Dart> alpha_b,
                     bool allow_reflection);
bool brute_force_iso(const EmbeddedMap& a, const EmbeddedMap& b, bool allow_reflection);

}  // namespace newton_maps
