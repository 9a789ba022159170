#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "chordarr/counter.hpp"
#include "chordarr/errors.hpp"
#include "chordarr/independence.hpp"

using namespace chordarr;

namespace {

// One chord crossing a single long chord, next to two chords that cross each
// other and the long chord.
Matching three_and_one() { return Matching::from_pairs({{0, 4}, {1, 7}, {2, 5}, {3, 6}}); }

BigCount plain(const Matching& m) {
  CountOptions o;
  o.threads = 1;
  return count_arrangements(m, o);
}

BigCount split(const Matching& m, int depth = kDefaultDepthLimit) {
  IndependenceOptions o;
  o.threads = 1;
  o.depth_limit = depth;
  o.weight_samples = 8;
  return count_with_independence(m, o);
}

}  // namespace

TEST(Independence, Definition) {
  const Matching m = three_and_one();
  EXPECT_TRUE(independent(m, 1, 2));
  EXPECT_TRUE(independent(m, 1, 3));
  EXPECT_FALSE(independent(m, 2, 3));
  EXPECT_THROW(independent(m, 1, 1), ValidationError);

  const Matching tri = pseudoline_matching(3);
  for (ChordId a = 0; a < 3; ++a) {
    for (ChordId b = a + 1; b < 3; ++b) EXPECT_FALSE(independent(tri, a, b));
  }
  // Nothing crosses both.
  EXPECT_TRUE(independent(family_matching({3}), 0, 2));
}

TEST(Independence, SeparatingChord) {
  // a=(0,3) and b=(7,10) are both crossed by x and y, which cross each other.
  // s=(4,11) crosses neither and has them on opposite sides.
  const Matching m = Matching::from_pairs({{0, 3}, {7, 10}, {4, 11}, {1, 8}, {2, 9}, {5, 6}});
  EXPECT_TRUE(independent(m, 0, 1));
  const std::vector<ChordId> without_s = {0, 1, 3, 4};
  EXPECT_FALSE(independent_within(m, without_s, 0, 1));
  const std::vector<ChordId> only_x = {0, 1, 3};
  EXPECT_TRUE(independent_within(m, only_x, 0, 1));
}

TEST(Independence, SymmetricOnRandomMatchings) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    std::vector<Label> l(14);
    std::iota(l.begin(), l.end(), 0);
    std::shuffle(l.begin(), l.end(), rng);
    std::vector<std::pair<Label, Label>> p;
    for (int i = 0; i < 7; ++i) p.emplace_back(l[static_cast<std::size_t>(2 * i)], l[static_cast<std::size_t>(2 * i + 1)]);
    const Matching m = Matching::from_pairs(p);
    for (ChordId a = 0; a < 7; ++a) {
      for (ChordId b = a + 1; b < 7; ++b) EXPECT_EQ(independent(m, a, b), independent(m, b, a));
    }
  }
}

TEST(Independence, PartitionRespectsIndependence) {
  const Matching m = three_and_one();
  const std::vector<double> w = {2, 2, 2, 2};
  const RgbPartition p = partition_rgb(m, w, 50, 1);
  ASSERT_TRUE(p.split());
  for (ChordId r : p.r) {
    for (ChordId b : p.b) EXPECT_TRUE(independent(m, r, b));
  }
  EXPECT_EQ(p.r.size() + p.g.size() + p.b.size(), 4u);
}

TEST(Independence, NoSplitForPseudolines) {
  const Matching m = pseudoline_matching(5);
  const RgbPartition p = partition_rgb(m, std::vector<double>(5, 3.0), 100, 0);
  EXPECT_FALSE(p.split());
  EXPECT_EQ(p.g.size(), 5u);
}

TEST(Independence, NonCrossingFamilySplitsFreely) {
  const Matching m = family_matching({4});
  const RgbPartition p = partition_rgb(m, std::vector<double>(4, 2.0), 20, 0);
  ASSERT_TRUE(p.split());
  EXPECT_TRUE(p.g.empty());
}

TEST(Independence, DeterministicGivenSeed) {
  const Matching m = Matching::from_pairs({{0, 9}, {1, 4}, {2, 6}, {3, 12}, {5, 8}, {7, 11}, {10, 13}});
  const std::vector<double> w = {3, 1, 4, 1, 5, 9, 2};
  const RgbPartition a = partition_rgb(m, w, 30, 42);
  const RgbPartition b = partition_rgb(m, w, 30, 42);
  EXPECT_EQ(a.r, b.r);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.b, b.b);
  EXPECT_THROW(partition_rgb(m, w, 0, 0), ValidationError);
}

TEST(Independence, CountsAgreeWithPlainCounting) {
  EXPECT_EQ(split(pseudoline_matching(5)), 62);
  EXPECT_EQ(split(three_and_one()), plain(three_and_one()));
  EXPECT_EQ(split(Matching::from_pairs({{0, 3}, {1, 4}, {2, 5}, {6, 9}, {7, 10}, {8, 11}})), 4);
  for (int k = 1; k <= 6; ++k) {
    for (const Matching& m : matchings_up_to_rotation(k)) {
      ASSERT_EQ(split(m), plain(m)) << m;
      ASSERT_EQ(split(m, 1), plain(m)) << m;
    }
  }
}

TEST(Independence, CountsAgreeOnRandomLargerMatchings) {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 40; ++t) {
    const int k = 7 + t % 3;
    std::vector<Label> l(static_cast<std::size_t>(2 * k));
    std::iota(l.begin(), l.end(), 0);
    std::shuffle(l.begin(), l.end(), rng);
    std::vector<std::pair<Label, Label>> p;
    for (int i = 0; i < k; ++i) p.emplace_back(l[static_cast<std::size_t>(2 * i)], l[static_cast<std::size_t>(2 * i + 1)]);
    const Matching m = Matching::from_pairs(p);
    EXPECT_EQ(split(m), plain(m)) << m;
  }
}
