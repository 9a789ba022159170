#include <set>

#include <gtest/gtest.h>

#include "chordarr/errors.hpp"
#include "chordarr/matching.hpp"

using namespace chordarr;

TEST(Matching, NormalizesAndValidates) {
  const Matching m = Matching::from_pairs({{4, 0}, {1, 7}, {2, 5}, {3, 6}});
  EXPECT_EQ(m.chord(0), (Chord{0, 4}));
  EXPECT_EQ(m.chord_at(7), 1);
  EXPECT_THROW(Matching::from_pairs({{0, 1}, {1, 2}}), ValidationError);
  EXPECT_THROW(Matching::from_pairs({{0, 5}, {1, 2}}), ValidationError);
  EXPECT_THROW(Matching::from_pairs({{0, 0}}), ValidationError);
}

TEST(Matching, CrossingRelation) {
  const Matching m = Matching::from_pairs({{0, 4}, {1, 7}, {2, 5}, {3, 6}});
  EXPECT_TRUE(crosses(m, 0, 1));
  EXPECT_FALSE(crosses(m, 1, 2));
  EXPECT_TRUE(crosses(m, 2, 3));
  EXPECT_THROW(crosses(m, 2, 2), ValidationError);
  EXPECT_EQ(crossing_set(m, 0), (std::vector<ChordId>{1, 2, 3}));
  EXPECT_EQ(crossing_set(m, 1), (std::vector<ChordId>{0}));
  EXPECT_EQ(m.crossing_pairs(), 4);
}

TEST(Matching, Families) {
  const Matching f = family_matching({3, 2, 4});
  EXPECT_EQ(f.size(), 9);
  EXPECT_EQ(f.crossing_pairs(), 3 * 2 + 3 * 4 + 2 * 4);
  const Matching p = pseudoline_matching(6);
  EXPECT_EQ(p.crossing_pairs(), 15);
  EXPECT_EQ(parse_family_spec("(1)x12"), pseudoline_matching(12));
  EXPECT_EQ(parse_family_spec("(3, 2, 4)"), f);
  EXPECT_EQ(parse_family_spec("(2)"), family_matching({2}));
  EXPECT_THROW(parse_family_spec("(0)"), ValidationError);
  EXPECT_THROW(parse_family_spec("3,2"), ValidationError);
  EXPECT_THROW(parse_family_spec("(1)x"), ValidationError);
}

TEST(Matching, ShiftAndReflectKeepCrossings) {
  const Matching m = Matching::from_pairs({{0, 4}, {1, 7}, {2, 5}, {3, 6}});
  for (int t = -3; t < 12; ++t) {
    const Matching s = cyclic_shift(m, t);
    for (ChordId a = 0; a < m.size(); ++a) {
      for (ChordId b = a + 1; b < m.size(); ++b) EXPECT_EQ(crosses(s, a, b), crosses(m, a, b));
    }
  }
  const Matching r = reflect(m);
  for (ChordId a = 0; a < m.size(); ++a) {
    for (ChordId b = a + 1; b < m.size(); ++b) EXPECT_EQ(crosses(r, a, b), crosses(m, a, b));
  }
  EXPECT_EQ(reflect(r), m);
  EXPECT_EQ(cyclic_shift(m, 8), m);
}

TEST(Matching, Submatching) {
  const Matching m = Matching::from_pairs({{0, 4}, {1, 7}, {2, 5}, {3, 6}});
  const std::vector<ChordId> sub = {3, 0};
  const Matching s = submatching(m, sub);
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(crosses(s, 0, 1));
  EXPECT_EQ(s.chord(0), (Chord{1, 3}));
  EXPECT_EQ(s.chord(1), (Chord{0, 2}));
}

TEST(Matching, TextFormat) {
  const Matching m = Matching::from_pairs({{0, 4}, {1, 7}, {2, 5}, {3, 6}});
  EXPECT_EQ(parse_matching(serialize_matching(m)), m);
  EXPECT_EQ(parse_matching("2\n0 3\n\n1 2\n"), Matching::from_pairs({{0, 3}, {1, 2}}));
  try {
    parse_matching("2\n0 3\n1 3\n");
    FAIL() << "duplicate label accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_matching("2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_matching("1\n0 x\n"), ParseError);
  EXPECT_THROW(parse_matching(""), ParseError);
  EXPECT_THROW(read_matching_file("/nonexistent/file.match"), ValidationError);
}

TEST(Matching, NestedExampleFile) {
  const Matching m = read_matching_file(std::string(CHORDARR_DATA_DIR) + "/nested2.match");
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m.crossing_pairs(), 0);
}

namespace {

std::set<std::vector<std::pair<Label, Label>>> rotation_class(const Matching& m) {
  std::set<std::vector<std::pair<Label, Label>>> out;
  for (int t = 0; t < m.label_count(); ++t) {
    auto p = cyclic_shift(m, t).pairs();
    std::sort(p.begin(), p.end());
    out.insert(p);
  }
  return out;
}

}  // namespace

TEST(Matching, RotationClassesPartitionAllMatchings) {
  for (int k = 1; k <= 5; ++k) {
    long all = 1;
    for (int i = 2 * k - 1; i > 1; i -= 2) all *= i;
    long covered = 0;
    std::set<std::vector<std::pair<Label, Label>>> seen;
    for (const Matching& m : matchings_up_to_rotation(k)) {
      for (const auto& p : rotation_class(m)) {
        EXPECT_TRUE(seen.insert(p).second) << "two representatives share a class, k=" << k;
        ++covered;
      }
    }
    EXPECT_EQ(covered, all) << k;
  }
}
