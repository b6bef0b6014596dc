#pragma once

// Exhaustive classification of Newton graphs of small order.
//
// Candidates are all loopless multigraphs on r labelled vertices with 2r
// edges and minimum degree 2, combined with every rotation system. Toroidal
// Euler-property maps are kept and deduplicated up to orientation-preserving
// isomorphism; the atlas then carries enough keys to quotient further by
// reflection and by duality.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newton_maps/canon.hpp"
#include "newton_maps/embedded_map.hpp"

namespace newton_maps {

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxCertifiedOrder = 3;
inline constexpr int kMaxOrder = 4;  // order 4 runs without the angle property

bool is_certified_order(int order);
// Throws UnsupportedOrder outside [kMinOrder, kMaxOrder].
void require_supported_order(int order);

// Edge multiplicities over vertex pairs (0,1), (0,2), ..., (r-2,r-1).
using Multiplicity = std::vector<int>;

std::vector<Multiplicity> multiplicity_vectors(int order);

// The multigraph frame for one multiplicity vector: sigma is left empty.
EmbeddedMap multigraph_frame(int order, const Multiplicity& multiplicity);

// Calls `fn` with every rotation system on the frame. With fix_first_dart the
// smallest dart at each vertex is pinned first in its cycle, which lists each
// cyclic rotation once; otherwise every linear order is produced.
void for_each_rotation_system(const EmbeddedMap& frame, bool fix_first_dart,
                              const std::function<void(std::span<const Dart>)>& fn);

// Every candidate map of the given order, toroidal or not.
void for_each_candidate(int order, bool fix_first_dart,
                        const std::function<void(const EmbeddedMap&)>& fn);

struct AtlasEntry {
  CanonicalKey key;     // reflection allowed
  CanonicalKey key_op;  // orientation preserving
  EmbeddedMap representative;
  std::vector<int> delta;
  std::vector<int> delta_star;
  int max_face = 0;
  std::vector<int> vertex_pattern;  // vertex multiplicities on the largest face
  bool self_dual = false;           // reflection sense
  bool self_dual_op = false;        // orientation-preserving sense
  CanonicalKey dual_key;            // reflection key of the dual
  std::string label;
  bool label_ambiguous = false;
};

AtlasEntry make_atlas_entry(const EmbeddedMap& map);

// Largest face first; ties broken by the lexicographically largest pattern.
std::vector<int> vertex_pattern_on_max_face(const EmbeddedMap& map);

struct EnumerationOptions {
  int order = 3;
  unsigned jobs = 1;
  bool fix_first_dart = true;
};

struct EnumerationStats {
  std::size_t multiplicity_vectors = 0;
  std::size_t candidates = 0;
  std::size_t toroidal = 0;
  std::size_t accepted = 0;  // toroidal, loopless, E-property, connected
};

struct Enumeration {
  int order = 0;
  bool certified = false;
  std::vector<AtlasEntry> entries;  // one per orientation-preserving class, sorted by (key, key_op)
  EnumerationStats stats;
};

Enumeration enumerate_newton(const EnumerationOptions& options);

struct Stratum {
  int max_face = 0;
  std::vector<int> vertex_pattern;
  std::size_t op_classes = 0;
  std::size_t refl_classes = 0;
  std::size_t self_dual_classes = 0;
  std::size_t reflection_merges = 0;  // op_classes - refl_classes
  std::size_t dual_pairs = 0;         // pairs with both members in this stratum

  auto operator<=>(const Stratum&) const = default;
};

// Strata keyed by (max_face, vertex_pattern). A class whose largest vertex
// degree exceeds its largest face is the dual of a class in a higher stratum
// and is counted in `dual_only` instead.
struct StrataSummary {
  std::vector<Stratum> strata;  // sorted by max_face descending, then pattern descending
  Stratum dual_only;

  const Stratum* find(int max_face, const std::vector<int>& pattern) const;
  std::size_t op_classes_with_max_face(int max_face) const;
  std::size_t refl_classes_with_max_face(int max_face) const;
};

StrataSummary strata_check(const std::vector<AtlasEntry>& entries);

struct ClassificationReport {
  int order = 0;
  bool certified = false;
  std::size_t count_op = 0;
  std::size_t count_refl = 0;
  std::size_t count_dual = 0;
  std::size_t self_dual_count = 0;
  std::vector<std::pair<CanonicalKey, CanonicalKey>> dual_pairs;  // (smaller, larger)
  StrataSummary strata;
  EnumerationStats stats;
};

// Throws ConsistencyError when a dual key has no entry in the atlas.
ClassificationReport classify(const std::vector<AtlasEntry>& entries);

struct DualityClassLabel {
  std::string label;
  bool ambiguous = false;
  CanonicalKey key;                      // the labelled member
  std::optional<CanonicalKey> dual_key;  // partner, when not self-dual
};

// Labels duality classes by stratum code (H/P/Q for largest face 6/5/4,
// followed by the vertex pattern) and an index among classes sharing that
// code. Classes whose invariants (delta, delta*, self-duality) coincide share
// a joint label and are flagged ambiguous. For order 3 the class counts must
// be 12 reflection classes and 9 duality classes, else ConsistencyError.
// Writes the labels back into `entries` (a trailing '*' marks dual partners).
std::vector<DualityClassLabel> label_atlas(std::vector<AtlasEntry>& entries);

}  // namespace newton_maps
