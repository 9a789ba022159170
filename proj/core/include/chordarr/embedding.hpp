#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chordarr/big_count.hpp"
#include "chordarr/matching.hpp"

namespace chordarr {

using HalfEdgeId = std::uint16_t;
using VertexId = std::uint16_t;
using FaceId = std::uint16_t;

inline constexpr std::uint16_t kNoIndex = std::numeric_limits<std::uint16_t>::max();

// Directed edge record. The incident face lies to the left of the half-edge,
// and the twin of half-edge h is always h ^ 1.
struct HalfEdge {
  VertexId origin;
  HalfEdgeId next;
  HalfEdgeId prev;
  FaceId face;
  std::int16_t chord;  // -1 on the bounding curve
  bool forward;        // runs from the chord's lower label toward its higher one
};

// Vertices 0..2k-1 are the endpoint slots on the bounding curve, in label
// order; later vertices are chord crossings.
struct Vertex {
  HalfEdgeId out;
  std::int16_t chord_a;  // -1 for slots
  std::int16_t chord_b;
};

// One crossed chord segment of an insertion route, identified by the half-edge
// on the side the new chord enters from.
struct RouteSegment {
  HalfEdgeId edge;
  ChordId crossed;

  friend bool operator==(const RouteSegment&, const RouteSegment&) = default;
};

struct Route {
  ChordId chord = -1;
  std::vector<RouteSegment> segments;

  friend bool operator==(const Route&, const Route&) = default;
};

enum class Orientation : std::int8_t {
  kUndefined = 0,  // first two chords do not cross
  kAbove = 1,
  kBelow = -1,
};

// Ordered-triple sign map of a complete simple arrangement. "Above" is the
// left-hand side of the third chord walked from its lower label to its higher.
class Chirotope {
 public:
  Chirotope() = default;
  explicit Chirotope(int k)
      : k_(k), values_(static_cast<std::size_t>(k) * static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0) {}

  int size() const noexcept { return k_; }
  Orientation at(ChordId c1, ChordId c2, ChordId c3) const {
    return static_cast<Orientation>(values_[index(c1, c2, c3)]);
  }
  void set(ChordId c1, ChordId c2, ChordId c3, Orientation o) {
    values_[index(c1, c2, c3)] = static_cast<std::int8_t>(o);
  }

  // Sorted "c1 c2 c3 sign" lines, one per defined triple.
  std::string dump() const;

  std::span<const std::int8_t> raw() const noexcept { return values_; }

  friend bool operator==(const Chirotope&, const Chirotope&) = default;
  friend auto operator<=>(const Chirotope&, const Chirotope&) = default;

 private:
  std::size_t index(ChordId c1, ChordId c2, ChordId c3) const {
    const auto k = static_cast<std::size_t>(k_);
    return (static_cast<std::size_t>(c1) * k + static_cast<std::size_t>(c2)) * k + static_cast<std::size_t>(c3);
  }

  int k_ = 0;
  std::vector<std::int8_t> values_;
};

// A (partial) pseudochord arrangement stored as a doubly-connected edge list of
// the closed disk. Face 0 is the outer face.
class Embedding {
 public:
  Embedding() = default;

  // Only the bounding cycle, with the 2k endpoint slots in counter-clockwise order.
  explicit Embedding(const Matching& m);

  int chord_count() const noexcept { return k_; }
  int inserted_count() const noexcept { return inserted_count_; }
  bool inserted(ChordId c) const { return chord_first_.at(static_cast<std::size_t>(c)) != kNoIndex; }
  bool complete() const noexcept { return inserted_count_ == k_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return half_edges_.size() / 2; }
  std::size_t face_count() const noexcept { return k_ == 0 ? 2 : face_edge_.size(); }
  std::size_t half_edge_count() const noexcept { return half_edges_.size(); }
  long euler_characteristic() const noexcept {
    return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) + static_cast<long>(face_count());
  }

  const HalfEdge& half_edge(HalfEdgeId h) const { return half_edges_[h]; }
  const Vertex& vertex(VertexId v) const { return vertices_[v]; }
  HalfEdgeId face_edge(FaceId f) const { return face_edge_[f]; }
  static constexpr FaceId outer_face() noexcept { return 0; }

  // Inner boundary half-edge leaving slot l (its face touches slot l).
  static constexpr HalfEdgeId slot_edge(Label l) noexcept { return static_cast<HalfEdgeId>(2 * l); }
  FaceId slot_face(Label l) const { return half_edges_[slot_edge(l)].face; }

  // Half-edges of chord c from its lower-label slot to its higher-label slot.
  std::vector<HalfEdgeId> chord_chain(ChordId c) const;

  // Chords crossed by c, in order along c.
  std::vector<ChordId> crossing_sequence(ChordId c) const;

  // Throws InvariantViolation on any structural inconsistency: broken twin /
  // next / prev links, face labels, Euler's formula, chord chains, or a
  // crossing pattern that disagrees with the matching.
  void validate(const Matching& m) const;

  // Inserts chord c crossing exactly the given half-edges, in order. Each edge
  // must lie on the face the chord currently occupies; `apply_route` performs
  // those checks, this entry point is the unchecked fast path.
  void insert_chord(const Matching& m, ChordId c, std::span<const HalfEdgeId> crossed);

 private:
  // Splits the edge of h at a new crossing vertex. Returns the half-edges that
  // leave the new vertex on h's face and on its twin's face.
  std::pair<HalfEdgeId, HalfEdgeId> split_edge(HalfEdgeId h, ChordId other);
  HalfEdgeId split_forward(HalfEdgeId h, ChordId other);
  HalfEdgeId split_face(HalfEdgeId hu, HalfEdgeId hv, ChordId c);
  void push_half_edge(const HalfEdge& e);

  int k_ = 0;
  int inserted_count_ = 0;
  std::vector<HalfEdge> half_edges_;
  std::vector<Vertex> vertices_;
  std::vector<HalfEdgeId> face_edge_;
  std::vector<HalfEdgeId> chord_first_;
};

Embedding boundary_embedding(const Matching& m);

// Walks the face DAG of insertion routes for one chord. A route leaves the face
// at the chord's lower slot, crosses only inserted chords of its crossing set,
// each at most once and always away from the start side, and ends at the face
// of the higher slot. Since every chord is crossed at most once, the crossed
// subset is a function of the current face, so faces alone key the DAG.
class RouteWalker {
 public:
  RouteWalker(const Embedding& e, const Matching& m, ChordId c);

  FaceId start_face() const noexcept { return start_; }
  FaceId target_face() const noexcept { return target_; }

  bool crossable(HalfEdgeId h) const {
    const HalfEdge& he = e_.half_edge(h);
    if (he.chord < 0) return false;
    if (!m_.crosses_unchecked(c_, he.chord)) return false;
    // Face of h is left of he.chord iff he.forward; the start slot lies on the
    // right of the chord iff it is strictly between its labels.
    return he.forward != m_.label_right_of(he.chord, lo_);
  }

  // Number of routes, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> count_u64() const;
  BigCount count_big() const;

  // Invokes fn(std::span<const HalfEdgeId>) once per route.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<HalfEdgeId> stack;
    stack.reserve(static_cast<std::size_t>(m_.size()));
    visit(start_, stack, fn);
  }

  // Per-face route counts toward the target (UINT64_MAX on overflow), indexed by face.
  std::vector<std::uint64_t> face_counts_u64() const;

  const Embedding& embedding() const noexcept { return e_; }

 private:
  template <class Fn>
  void visit(FaceId f, std::vector<HalfEdgeId>& stack, Fn& fn) const {
    if (f == target_) {
      fn(std::span<const HalfEdgeId>(stack));
      return;
    }
    const HalfEdgeId first = e_.face_edge(f);
    HalfEdgeId h = first;
    do {
      if (crossable(h)) {
        stack.push_back(h);
        visit(e_.half_edge(static_cast<HalfEdgeId>(h ^ 1)).face, stack, fn);
        stack.pop_back();
      }
      h = e_.half_edge(h).next;
    } while (h != first);
  }

  const Embedding& e_;
  const Matching& m_;
  ChordId c_;
  Label lo_;
  FaceId start_;
  FaceId target_;
};

std::vector<Route> insertion_routes(const Embedding& e, const Matching& m, ChordId c);
BigCount count_insertions(const Embedding& e, const Matching& m, ChordId c);

// Checked insertion. Throws ValidationError for a route that does not fit e
// (stale edges, wrong faces, wrong crossed chords).
Embedding apply_route(const Embedding& e, const Matching& m, const Route& r);

// Throws ValidationError when e is incomplete.
Chirotope chirotope(const Embedding& e, const Matching& m);

// Per-chord crossing sequences; equal exactly when chirotopes are equal.
std::vector<std::vector<ChordId>> crossing_sequences(const Embedding& e);

}  // namespace chordarr
