#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chordarr/big_count.hpp"
#include "chordarr/counter.hpp"
#include "chordarr/matching.hpp"

namespace chordarr {

// c and c' are independent when one of these holds:
//  1. some chord crossing neither of them separates them;
//  2. they do not cross, and no two chords crossing both of them cross each other;
//  3. no other chord crosses both.
// Throws ValidationError when c == c'.
bool independent(const Matching& m, ChordId c, ChordId c2);

// Same test restricted to the chords in `active` (ids of m). Chords outside
// `active` are ignored, as if they were absent from the matching.
bool independent_within(const Matching& m, std::span<const ChordId> active, ChordId c, ChordId c2);

struct RgbPartition {
  std::vector<ChordId> r;
  std::vector<ChordId> g;
  std::vector<ChordId> b;
  double log2_weight_r = 0.0;
  double log2_weight_b = 0.0;

  bool split() const noexcept { return !r.empty() && !b.empty(); }
};

// Random greedy search over `trials` shuffles of `chords` (all of m when
// empty). Maximizes min(weight(R), weight(B)), ties broken toward balance.
// Independence is judged within `context`, which must contain `chords`
// (all of m when empty).
RgbPartition partition_rgb(const Matching& m, std::span<const double> weights, int trials, std::uint64_t seed,
                           std::span<const ChordId> chords = {}, std::span<const ChordId> context = {});

inline constexpr int kDefaultTrials = 200;
inline constexpr int kDefaultDepthLimit = 4;

struct IndependenceOptions {
  int depth_limit = kDefaultDepthLimit;
  int trials = kDefaultTrials;
  unsigned threads = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  int weight_samples = kDefaultWeightSamples;
};

// |arr(M)| by summing, over every insertion of G, the product of the R and B
// sub-counts. Falls back to plain counting past the depth limit or when no
// useful split exists.
BigCount count_with_independence(const Matching& m, const IndependenceOptions& opts = {});

}  // namespace chordarr
