#pragma once

// Oriented combinatorial maps encoded as rotation systems over darts.
//
// A map is a pair of permutations on darts (half-edges):
//   sigma  the anti-clockwise successor of a dart around its origin vertex
//   alpha  the fixed-point-free involution exchanging the two ends of an edge
// The face permutation is phi = sigma o alpha (apply alpha first). With sigma
// anti-clockwise, the phi-orbits are the clockwise facial walks.
//
// Edge k owns darts 2k and 2k+1; dart 2k sits at the first declared endpoint.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newton_maps {

using Dart = std::int32_t;
using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId edge_of(Dart d) { return d >> 1; }
inline constexpr Dart partner_dart(Dart d) { return d ^ 1; }

// Single orientation bit carried alongside a map. Only serialization and
// display look at it; keys and predicates ignore it.
enum class Orientation : std::uint8_t { kClockwiseFaces, kAnticlockwiseFaces };

Orientation flipped(Orientation o);

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmbeddedMap {
 public:
  EmbeddedMap() = default;

  // No validation happens here; call validate() on untrusted input.
  EmbeddedMap(std::vector<Dart> sigma, std::vector<Dart> alpha,
              std::vector<VertexId> origin,
              std::vector<std::string> vertex_names,
              std::vector<std::string> edge_names,
              Orientation orientation = Orientation::kClockwiseFaces);

  // Builds a map from sigma alone: alpha is the standard pairing, vertices are
  // the sigma-cycles in order of their smallest dart, names are generated.
  static EmbeddedMap from_sigma(std::vector<Dart> sigma);

  std::size_t num_darts() const { return sigma_.size(); }
  std::size_t num_edges() const { return sigma_.size() / 2; }
  std::size_t num_vertices() const { return vertex_names_.size(); }

  Dart sigma(Dart d) const { return sigma_[static_cast<std::size_t>(d)]; }
  Dart alpha(Dart d) const { return alpha_[static_cast<std::size_t>(d)]; }
  Dart phi(Dart d) const { return sigma(alpha(d)); }
  VertexId origin(Dart d) const { return origin_[static_cast<std::size_t>(d)]; }

  std::span<const Dart> sigma_perm() const { return sigma_; }
  std::span<const Dart> alpha_perm() const { return alpha_; }
  std::span<const VertexId> origins() const { return origin_; }

  const std::string& vertex_name(VertexId v) const {
    return vertex_names_[static_cast<std::size_t>(v)];
  }
  const std::string& edge_name(EdgeId e) const {
    return edge_names_[static_cast<std::size_t>(e)];
  }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& edge_names() const { return edge_names_; }
  Orientation orientation() const { return orientation_; }

  // Darts at v in anti-clockwise order, starting at the smallest dart.
  std::vector<Dart> rotation_at(VertexId v) const;
  std::size_t degree(VertexId v) const;

  bool same_structure(const EmbeddedMap& other) const {
    return sigma_ == other.sigma_ && alpha_ == other.alpha_;
  }
  bool operator==(const EmbeddedMap&) const = default;

 private:
  std::vector<Dart> sigma_;
  std::vector<Dart> alpha_;
  std::vector<VertexId> origin_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  Orientation orientation_ = Orientation::kClockwiseFaces;
};

enum class DefectKind {
  kSizeMismatch,
  kDartOutOfRange,
  kSigmaNotPermutation,
  kAlphaFixedPoint,
  kAlphaNotInvolution,
  kAlphaNotEdgePairing,
  kOriginOutOfRange,
  kOriginMismatch,
  kVertexSplit,
  kEmptyVertex,
  kDisconnected,
  // advisory
  kLoopPresent,
  kDegreeOneVertex,
};

std::string_view defect_tag(DefectKind kind);
bool is_advisory(DefectKind kind);

struct Defect {
  DefectKind kind;
  std::int64_t subject = -1;  // offending dart, edge or vertex; -1 if none
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Defect> defects;

  bool has(DefectKind kind) const;
};

ValidationReport validate(const EmbeddedMap& map);

struct FacialWalk {
  std::vector<Dart> darts;  // rotated to start at the smallest dart
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return darts.size(); }
};

// phi-orbits, ordered by their smallest dart.
std::vector<FacialWalk> facial_walks(const EmbeddedMap& map);

// Face index of every dart, consistent with the order of facial_walks().
std::vector<std::int32_t> face_of_darts(const EmbeddedMap& map);

std::size_t num_faces(const EmbeddedMap& map);

// "v1 a v2 b v1" style rendering, closing vertex omitted.
std::string format_walk(const EmbeddedMap& map, const FacialWalk& walk);

struct EulerData {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;
  std::int64_t chi = 0;
  std::int64_t genus = 0;
};

EulerData euler_characteristic(const EmbeddedMap& map);

// Sorted descending.
std::vector<int> degree_sequence(const EmbeddedMap& map);
std::vector<int> face_degree_sequence(const EmbeddedMap& map);

// sigma replaced by its inverse; alpha and names unchanged.
EmbeddedMap mirror(const EmbeddedMap& map);

bool is_connected(std::span<const Dart> sigma, std::span<const Dart> alpha);
std::vector<Dart> inverse_permutation(std::span<const Dart> perm);

// A closed walk given as alternating vertex / edge labels. The closing vertex
// may be repeated at the end or omitted.
using WalkLabels = std::vector<std::string>;

// Polygon patching: glue one polygon per walk along equally labelled sides.
// Throws InputError on inconsistent polygons, non-orientable gluing, vertices
// that do not close up into a single disk, or a disconnected result.
EmbeddedMap map_from_facial_walks(const std::vector<WalkLabels>& walks);

// Orders vertex names so that "v2" < "v10".
bool natural_less(const std::string& a, const std::string& b);

}  // namespace newton_maps
