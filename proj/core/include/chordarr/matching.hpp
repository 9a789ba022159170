#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chordarr {

// Position of a chord in its matching's input order.
using ChordId = int;

// Boundary label in [0, 2k).
using Label = int;

struct Chord {
  Label lo;
  Label hi;

  friend bool operator==(const Chord&, const Chord&) = default;
};

// A perfect matching on 2k labels placed counter-clockwise on a closed curve.
// Each chord is stored with lo < hi and is oriented from lo to hi.
class Matching {
 public:
  // Largest chord count supported by the counting engine (16-bit DCEL indices).
  static constexpr int kMaxChords = 120;

  Matching() = default;

  // Validates and normalizes. Throws ValidationError naming the offending label.
  static Matching from_pairs(std::span<const std::pair<Label, Label>> pairs);
  static Matching from_pairs(std::initializer_list<std::pair<Label, Label>> pairs);

  int size() const noexcept { return static_cast<int>(chords_.size()); }
  int label_count() const noexcept { return 2 * size(); }
  bool empty() const noexcept { return chords_.empty(); }

  const Chord& chord(ChordId c) const { return chords_.at(static_cast<std::size_t>(c)); }
  std::span<const Chord> chords() const noexcept { return chords_; }

  // Chord owning a label.
  ChordId chord_at(Label l) const { return owner_.at(static_cast<std::size_t>(l)); }

  // Precomputed interleaving test; c1 == c2 is rejected by the free function below.
  bool crosses_unchecked(ChordId c1, ChordId c2) const noexcept {
    return cross_[static_cast<std::size_t>(c1 * size() + c2)] != 0;
  }

  // True when label l lies strictly between the endpoints of chord c, i.e. on the
  // right-hand side of c when c is walked from lo to hi.
  bool label_right_of(ChordId c, Label l) const noexcept {
    const Chord& ch = chords_[static_cast<std::size_t>(c)];
    return ch.lo < l && l < ch.hi;
  }

  std::vector<std::pair<Label, Label>> pairs() const;

  // Total number of crossing chord pairs.
  int crossing_pairs() const noexcept;

  friend bool operator==(const Matching& a, const Matching& b) { return a.chords_ == b.chords_; }

 private:
  explicit Matching(std::vector<Chord> chords);

  std::vector<Chord> chords_;
  std::vector<ChordId> owner_;
  std::vector<std::uint8_t> cross_;
};

bool crosses(const Matching& m, ChordId c1, ChordId c2);

// Chords crossing c, ascending.
std::vector<ChordId> crossing_set(const Matching& m, ChordId c);

// Relabels a -> (a + t) mod 2k. Chord identities are kept.
Matching cyclic_shift(const Matching& m, int t);

// Reverses the circular label order: a -> 2k - 1 - a.
Matching reflect(const Matching& m);

// (k1, ..., kr)-matching: chords cross iff they lie in different groups.
// Groups occupy consecutive chord ids in the order given.
Matching family_matching(std::span<const int> group_sizes);
Matching family_matching(std::initializer_list<int> group_sizes);

// (1)_n: n pairwise crossing chords, i.e. pseudoline arrangements of order n.
Matching pseudoline_matching(int n);

// Restriction to a subset of chords, relabelled to 0..2|subset|-1 in circular order.
// Chord i of the result is subset[i].
Matching submatching(const Matching& m, std::span<const ChordId> subset);

// ".match" text: first line k, then one "a b" line per chord.
Matching parse_matching(std::string_view text);
std::string serialize_matching(const Matching& m);
Matching read_matching_file(const std::string& path);

// Family shorthand: "(3,2,4)" or "(1)x12".
Matching parse_family_spec(std::string_view spec);

// Every perfect matching on 2k labels, one representative per cyclic-shift class.
std::vector<Matching> matchings_up_to_rotation(int k);

std::ostream& operator<<(std::ostream& os, const Matching& m);

}  // namespace chordarr
