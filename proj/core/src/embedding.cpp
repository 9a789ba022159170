#include "chordarr/embedding.hpp"

#include <algorithm>
#include <sstream>

#include "chordarr/errors.hpp"

namespace chordarr {

namespace {

constexpr std::uint64_t kOverflow = std::numeric_limits<std::uint64_t>::max();

void check_chord(const Matching& m, ChordId c) {
  if (c < 0 || c >= m.size()) throw ValidationError("chord id " + std::to_string(c) + " out of range");
}

}  // namespace

std::string Chirotope::dump() const {
  std::ostringstream os;
  for (int a = 0; a < k_; ++a) {
    for (int b = 0; b < k_; ++b) {
      for (int c = 0; c < k_; ++c) {
        if (a == b || a == c || b == c) continue;
        const Orientation o = at(a, b, c);
        if (o == Orientation::kUndefined) continue;
        os << a << ' ' << b << ' ' << c << ' ' << (o == Orientation::kAbove ? "+1" : "-1") << '\n';
      }
    }
  }
  return os.str();
}

Embedding::Embedding(const Matching& m) : k_(m.size()) {
  chord_first_.assign(static_cast<std::size_t>(k_), kNoIndex);
  if (k_ == 0) return;
  const int n = 2 * k_;
  vertices_.resize(static_cast<std::size_t>(n));
  half_edges_.resize(static_cast<std::size_t>(2 * n));
  face_edge_ = {1, 0};  // outer face, inner face
  auto idx = [n](int i) { return ((i % n) + n) % n; };
  for (int i = 0; i < n; ++i) {
    HalfEdge& inner = half_edges_[static_cast<std::size_t>(2 * i)];
    inner.origin = static_cast<VertexId>(i);
    inner.next = static_cast<HalfEdgeId>(2 * idx(i + 1));
    inner.prev = static_cast<HalfEdgeId>(2 * idx(i - 1));
    inner.face = 1;
    inner.chord = -1;
    inner.forward = true;
    HalfEdge& outer = half_edges_[static_cast<std::size_t>(2 * i + 1)];
    outer.origin = static_cast<VertexId>(idx(i + 1));
    outer.next = static_cast<HalfEdgeId>(2 * idx(i - 1) + 1);
    outer.prev = static_cast<HalfEdgeId>(2 * idx(i + 1) + 1);
    outer.face = 0;
    outer.chord = -1;
    outer.forward = false;
    vertices_[static_cast<std::size_t>(i)] = {static_cast<HalfEdgeId>(2 * i), -1, -1};
  }
}

Embedding boundary_embedding(const Matching& m) { return Embedding(m); }

void Embedding::push_half_edge(const HalfEdge& e) { half_edges_.push_back(e); }

// h keeps its origin; the twin's origin moves to the new vertex. Only called
// on forward half-edges so chain starts stay put.
HalfEdgeId Embedding::split_forward(HalfEdgeId h, ChordId other) {
  const HalfEdgeId t = static_cast<HalfEdgeId>(h ^ 1);
  const auto n0 = static_cast<HalfEdgeId>(half_edges_.size());
  const auto n1 = static_cast<HalfEdgeId>(n0 + 1);
  const auto v = static_cast<VertexId>(vertices_.size());
  const HalfEdge hh = half_edges_[h];
  const HalfEdge tt = half_edges_[t];
  const VertexId w = tt.origin;

  push_half_edge({v, hh.next, h, hh.face, hh.chord, hh.forward});
  push_half_edge({w, t, tt.prev, tt.face, tt.chord, tt.forward});
  half_edges_[hh.next].prev = n0;
  half_edges_[h].next = n0;
  half_edges_[tt.prev].next = n1;
  half_edges_[t].prev = n1;
  half_edges_[t].origin = v;
  if (vertices_[w].out == t) vertices_[w].out = n1;
  vertices_.push_back({n0, hh.chord, static_cast<std::int16_t>(other)});
  return n0;
}

std::pair<HalfEdgeId, HalfEdgeId> Embedding::split_edge(HalfEdgeId h, ChordId other) {
  const HalfEdgeId t = static_cast<HalfEdgeId>(h ^ 1);
  if (half_edges_[h].forward) return {split_forward(h, other), t};
  const HalfEdgeId n0 = split_forward(t, other);
  return {h, n0};
}

HalfEdgeId Embedding::split_face(HalfEdgeId hu, HalfEdgeId hv, ChordId c) {
  const auto e0 = static_cast<HalfEdgeId>(half_edges_.size());
  const auto e1 = static_cast<HalfEdgeId>(e0 + 1);
  const FaceId f = half_edges_[hu].face;
  const auto nf = static_cast<FaceId>(face_edge_.size());
  const HalfEdgeId pu = half_edges_[hu].prev;
  const HalfEdgeId pv = half_edges_[hv].prev;
  const VertexId u = half_edges_[hu].origin;
  const VertexId v = half_edges_[hv].origin;

  push_half_edge({u, hv, pu, f, static_cast<std::int16_t>(c), true});
  push_half_edge({v, hu, pv, nf, static_cast<std::int16_t>(c), false});
  half_edges_[pu].next = e0;
  half_edges_[hv].prev = e0;
  half_edges_[pv].next = e1;
  half_edges_[hu].prev = e1;
  face_edge_[f] = e0;
  face_edge_.push_back(e1);
  HalfEdgeId h = e1;
  do {
    half_edges_[h].face = nf;
    h = half_edges_[h].next;
  } while (h != e1);
  return e0;
}

void Embedding::insert_chord(const Matching& m, ChordId c, std::span<const HalfEdgeId> crossed) {
  const Chord& ch = m.chord(c);
  HalfEdgeId cur = slot_edge(ch.lo);
  HalfEdgeId first = kNoIndex;
  for (HalfEdgeId h : crossed) {
    const auto [entry, exit] = split_edge(h, c);
    const HalfEdgeId e0 = split_face(cur, entry, c);
    if (first == kNoIndex) first = e0;
    cur = exit;
  }
  const HalfEdgeId e0 = split_face(cur, slot_edge(ch.hi), c);
  if (first == kNoIndex) first = e0;
  chord_first_[static_cast<std::size_t>(c)] = first;
  ++inserted_count_;
}

std::vector<HalfEdgeId> Embedding::chord_chain(ChordId c) const {
  std::vector<HalfEdgeId> chain;
  HalfEdgeId h = chord_first_.at(static_cast<std::size_t>(c));
  if (h == kNoIndex) return chain;
  const auto slots = static_cast<VertexId>(2 * k_);
  while (true) {
    chain.push_back(h);
    const VertexId w = half_edges_[h ^ 1].origin;
    if (w < slots) break;
    const HalfEdgeId turn = half_edges_[h].next;
    h = half_edges_[turn ^ 1].next;
  }
  return chain;
}

std::vector<ChordId> Embedding::crossing_sequence(ChordId c) const {
  std::vector<ChordId> seq;
  const auto chain = chord_chain(c);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const Vertex& v = vertices_[half_edges_[chain[i] ^ 1].origin];
    seq.push_back(v.chord_a == c ? v.chord_b : v.chord_a);
  }
  return seq;
}

void Embedding::validate(const Matching& m) const {
  auto fail = [](const std::string& what) { throw InvariantViolation("embedding: " + what); };
  if (m.size() != k_) fail("chord count disagrees with matching");
  if (k_ == 0) return;
  const std::size_t nh = half_edges_.size();
  if (nh % 2 != 0) fail("odd half-edge count");
  for (std::size_t h = 0; h < nh; ++h) {
    const HalfEdge& e = half_edges_[h];
    if (e.next >= nh || e.prev >= nh || e.origin >= vertices_.size() || e.face >= face_edge_.size()) {
      fail("dangling index at half-edge " + std::to_string(h));
    }
    if (half_edges_[e.next].prev != h) fail("next/prev mismatch at half-edge " + std::to_string(h));
    if (half_edges_[e.next].face != e.face) fail("face label breaks along cycle at " + std::to_string(h));
    if (half_edges_[e.next].origin != half_edges_[h ^ 1].origin) {
      fail("next does not start where half-edge " + std::to_string(h) + " ends");
    }
    const HalfEdge& t = half_edges_[h ^ 1];
    if (t.chord != e.chord || t.forward == e.forward) fail("twin disagreement at " + std::to_string(h));
  }
  // Each face label must describe exactly one cycle.
  std::vector<bool> seen(nh, false);
  std::size_t cycles = 0;
  for (std::size_t f = 0; f < face_edge_.size(); ++f) {
    HalfEdgeId h = face_edge_[f];
    if (half_edges_[h].face != f) fail("face representative has wrong face");
    do {
      if (seen[h]) fail("half-edge on two face cycles");
      seen[h] = true;
      h = half_edges_[h].next;
    } while (h != face_edge_[f]);
    ++cycles;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail("half-edge outside every face cycle");
  if (cycles != face_edge_.size()) fail("cycle count mismatch");
  if (euler_characteristic() != 2) fail("Euler characteristic " + std::to_string(euler_characteristic()));

  const auto slots = static_cast<std::size_t>(2 * k_);
  for (std::size_t v = slots; v < vertices_.size(); ++v) {
    int degree = 0;
    const HalfEdgeId first = vertices_[v].out;
    if (half_edges_[first].origin != v) fail("vertex out-edge does not start at vertex");
    HalfEdgeId h = first;
    do {
      ++degree;
      h = half_edges_[h ^ 1].next;
    } while (h != first && degree <= 8);
    if (degree != 4) fail("crossing vertex of degree " + std::to_string(degree));
  }

  for (ChordId c = 0; c < k_; ++c) {
    if (!inserted(c)) continue;
    const auto chain = chord_chain(c);
    if (half_edges_[chain.front()].origin != static_cast<VertexId>(m.chord(c).lo)) fail("chain start");
    if (half_edges_[chain.back() ^ 1].origin != static_cast<VertexId>(m.chord(c).hi)) fail("chain end");
    for (HalfEdgeId h : chain) {
      if (half_edges_[h].chord != c || !half_edges_[h].forward) fail("chain edge not a forward edge of its chord");
    }
    auto seq = crossing_sequence(c);
    std::vector<ChordId> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail("chord " + std::to_string(c) + " crosses another chord twice");
    }
    std::vector<ChordId> expected;
    for (ChordId o = 0; o < k_; ++o) {
      if (o != c && inserted(o) && m.crosses_unchecked(c, o)) expected.push_back(o);
    }
    if (sorted != expected) fail("chord " + std::to_string(c) + " crossing set disagrees with matching");
  }
}

RouteWalker::RouteWalker(const Embedding& e, const Matching& m, ChordId c) : e_(e), m_(m), c_(c) {
  check_chord(m, c);
  if (e.chord_count() != m.size()) throw ValidationError("embedding does not belong to matching");
  if (e.inserted(c)) throw ValidationError("chord " + std::to_string(c) + " is already inserted");
  lo_ = m.chord(c).lo;
  start_ = e.slot_face(lo_);
  target_ = e.slot_face(m.chord(c).hi);
}

std::vector<std::uint64_t> RouteWalker::face_counts_u64() const {
  std::vector<std::uint64_t> memo(e_.face_count(), kOverflow - 1);
  constexpr std::uint64_t kUnset = kOverflow - 1;
  // Depth is bounded by the chord count, so plain recursion is fine.
  auto solve = [&](auto&& self, FaceId f) -> std::uint64_t {
    std::uint64_t& slot = memo[f];
    if (slot != kUnset) return slot;
    if (f == target_) return slot = 1;
    std::uint64_t total = 0;
    const HalfEdgeId first = e_.face_edge(f);
    HalfEdgeId h = first;
    do {
      if (crossable(h)) {
        const std::uint64_t sub = self(self, e_.half_edge(static_cast<HalfEdgeId>(h ^ 1)).face);
        if (sub == kOverflow || __builtin_add_overflow(total, sub, &total) || total >= kUnset) {
          total = kOverflow;
          break;
        }
      }
      h = e_.half_edge(h).next;
    } while (h != first);
    return slot = total;
  };
  solve(solve, start_);
  return memo;
}

std::optional<std::uint64_t> RouteWalker::count_u64() const {
  const auto memo = face_counts_u64();
  const std::uint64_t v = memo[start_];
  if (v == kOverflow) return std::nullopt;
  return v;
}

BigCount RouteWalker::count_big() const {
  if (auto v = count_u64()) return BigCount(static_cast<unsigned long>(*v));
  std::vector<std::optional<BigCount>> memo(e_.face_count());
  auto solve = [&](auto&& self, FaceId f) -> BigCount {
    if (memo[f]) return *memo[f];
    BigCount total = 0;
    if (f == target_) {
      total = 1;
    } else {
      const HalfEdgeId first = e_.face_edge(f);
      HalfEdgeId h = first;
      do {
        if (crossable(h)) total += self(self, e_.half_edge(static_cast<HalfEdgeId>(h ^ 1)).face);
        h = e_.half_edge(h).next;
      } while (h != first);
    }
    memo[f] = total;
    return total;
  };
  return solve(solve, start_);
}

std::vector<Route> insertion_routes(const Embedding& e, const Matching& m, ChordId c) {
  RouteWalker walker(e, m, c);
  std::vector<Route> routes;
  walker.for_each([&](std::span<const HalfEdgeId> edges) {
    Route r;
    r.chord = c;
    for (HalfEdgeId h : edges) r.segments.push_back({h, e.half_edge(h).chord});
    routes.push_back(std::move(r));
  });
  return routes;
}

BigCount count_insertions(const Embedding& e, const Matching& m, ChordId c) {
  return RouteWalker(e, m, c).count_big();
}

Embedding apply_route(const Embedding& e, const Matching& m, const Route& r) {
  RouteWalker walker(e, m, r.chord);
  FaceId face = walker.start_face();
  std::vector<HalfEdgeId> edges;
  std::vector<bool> used(static_cast<std::size_t>(m.size()), false);
  for (const RouteSegment& s : r.segments) {
    if (s.edge >= e.half_edge_count()) throw ValidationError("stale route: half-edge no longer exists");
    const HalfEdge& he = e.half_edge(s.edge);
    if (he.face != face) throw ValidationError("stale route: segment is not on the current face");
    if (he.chord != s.crossed) throw ValidationError("stale route: segment belongs to another chord");
    if (!walker.crossable(s.edge) || used[static_cast<std::size_t>(s.crossed)]) {
      throw ValidationError("route crosses chord " + std::to_string(s.crossed) + " illegally");
    }
    used[static_cast<std::size_t>(s.crossed)] = true;
    edges.push_back(s.edge);
    face = e.half_edge(static_cast<HalfEdgeId>(s.edge ^ 1)).face;
  }
  if (face != walker.target_face()) throw ValidationError("route does not reach the end slot");
  Embedding out = e;
  out.insert_chord(m, r.chord, edges);
  return out;
}

std::vector<std::vector<ChordId>> crossing_sequences(const Embedding& e) {
  std::vector<std::vector<ChordId>> seqs(static_cast<std::size_t>(e.chord_count()));
  for (ChordId c = 0; c < e.chord_count(); ++c) {
    if (e.inserted(c)) seqs[static_cast<std::size_t>(c)] = e.crossing_sequence(c);
  }
  return seqs;
}

Chirotope chirotope(const Embedding& e, const Matching& m) {
  if (!e.complete()) throw ValidationError("chirotope needs every chord inserted");
  const int k = m.size();
  Chirotope chi(k);
  // position[c][o]: index of the crossing with o along c, or -1.
  std::vector<std::vector<int>> position(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (ChordId c = 0; c < k; ++c) {
    const auto seq = e.crossing_sequence(c);
    for (std::size_t i = 0; i < seq.size(); ++i) position[c][static_cast<std::size_t>(seq[i])] = static_cast<int>(i);
  }
  // Side of the point c1 ∩ c2 relative to c3, seen along c1: it shares the
  // side of c1's lower slot until c1 crosses c3.
  auto side_along = [&](ChordId c1, ChordId c2, ChordId c3) {
    bool right = m.label_right_of(c3, m.chord(c1).lo);
    const int p3 = position[c1][c3];
    if (p3 >= 0 && position[c1][c2] > p3) right = !right;
    return right ? Orientation::kBelow : Orientation::kAbove;
  };
  for (ChordId a = 0; a < k; ++a) {
    for (ChordId b = 0; b < k; ++b) {
      if (a == b || !m.crosses_unchecked(a, b)) continue;
      for (ChordId c = 0; c < k; ++c) {
        if (c == a || c == b) continue;
        const Orientation o = side_along(a, b, c);
        if (o != side_along(b, a, c)) {
          throw InvariantViolation("inconsistent crossing sides for chords " + std::to_string(a) + ", " +
                                   std::to_string(b) + ", " + std::to_string(c));
        }
        chi.set(a, b, c, o);
      }
    }
  }
  return chi;
}

}  // namespace chordarr
