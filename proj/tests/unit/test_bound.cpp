#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "chordarr/bound.hpp"
#include "chordarr/errors.hpp"

using namespace chordarr;

namespace {

RegionEntry entry(const std::string& name, long count, Rational p) {
  return RegionEntry{name, BigCount(count), std::nullopt, std::move(p)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Bound, TileExamples) {
  EXPECT_EQ(matching_bound({entry("tile", 2, Rational(3, 4))}), Rational(3, 4));
  EXPECT_EQ(pseudoline_bound(Rational(3, 4), 3), Rational(1, 8));
  EXPECT_EQ(matching_bound({entry("x", 8, Rational(1, 2)), entry("y", 4, 1)}, LogMode::kFloor), Rational(7, 2));
  // log2(20) is not an integer: floor gives 4, fixed point gives more.
  const auto warm = {entry("tile2", 20, Rational(3, 16))};
  EXPECT_EQ(matching_bound(warm, LogMode::kFloor), Rational(3, 4));
  EXPECT_GT(matching_bound(warm), Rational(3, 4));
  EXPECT_GT(pseudoline_bound(matching_bound(warm), 3), Rational(135, 1000));
}

TEST(Bound, Errors) {
  EXPECT_THROW(pseudoline_bound(1, 1), ValidationError);
  EXPECT_THROW(pseudoline_bound(0, 3), ValidationError);
  EXPECT_THROW(matching_bound({}), ValidationError);
  EXPECT_THROW(matching_bound({entry("z", 0, 1)}), ValidationError);
  EXPECT_THROW(matching_bound({entry("n", 2, -1)}), ValidationError);
}

TEST(Bound, LogModes) {
  RegionEntry e = entry("e", 1024, 1);
  EXPECT_EQ(entry_log2(e, LogMode::kFloor), 10);
  EXPECT_EQ(entry_log2(e, LogMode::kFixed60), 10);
  e.count = BigCount(1023);
  EXPECT_EQ(entry_log2(e, LogMode::kFloor), 9);
  EXPECT_LT(entry_log2(e, LogMode::kFixed60), 10);
  EXPECT_GT(entry_log2(e, LogMode::kFixed60), Rational(99, 10));
  RegionEntry l{"l", std::nullopt, Rational(349033), 1};
  EXPECT_EQ(entry_log2(l, LogMode::kFloor), 349033);
}

TEST(Bound, Additivity) {
  const std::vector<RegionEntry> a = {entry("a", 5, Rational(1, 3)), entry("b", 7, Rational(2, 5))};
  const std::vector<RegionEntry> b = {entry("c", 11, Rational(1, 7))};
  std::vector<RegionEntry> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  EXPECT_EQ(matching_bound(ab), matching_bound(a) + matching_bound(b));
  // Linear in p.
  EXPECT_EQ(matching_bound({entry("a", 5, Rational(2, 3))}), 2 * matching_bound({entry("a", 5, Rational(1, 3))}));
}

TEST(Bound, DefaultTable) {
  const auto table = default_region_table();
  ASSERT_EQ(table.size(), 19u);
  EXPECT_EQ(table.front().name, "R_A");
  EXPECT_FALSE(table.back().count.has_value());
  const Rational c = matching_bound(table);
  EXPECT_GE(c, Rational(34374, 1000));
  EXPECT_GE(pseudoline_bound(c, 12), Rational(2604, 10000));

  const auto file = load_region_table(std::string(CHORDARR_DATA_DIR) + "/regions.tsv");
  ASSERT_EQ(file.size(), table.size());
  for (std::size_t i = 0; i < file.size(); ++i) {
    EXPECT_EQ(file[i].name, table[i].name);
    EXPECT_EQ(file[i].count, table[i].count);
    EXPECT_EQ(file[i].log2_bound, table[i].log2_bound);
    EXPECT_EQ(file[i].p, table[i].p);
  }
  EXPECT_EQ(slurp(std::string(CHORDARR_DATA_DIR) + "/regions.tsv").empty(), false);
}

TEST(Bound, MalformedRows) {
  auto row_of = [](std::string_view text) -> std::size_t {
    try {
      parse_region_table(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(row_of("a 2 1/2\nb 3\n"), 2u);
  EXPECT_EQ(row_of("# c\na 2 1/2 extra\n"), 2u);
  EXPECT_EQ(row_of("a x 1/2\n"), 1u);
  EXPECT_EQ(row_of("a 2 0\n"), 1u);
  EXPECT_EQ(row_of("a 0 1\n"), 1u);
  EXPECT_EQ(row_of("a log2>=12 1/4\n"), 0u);
  EXPECT_THROW(load_region_table("/nonexistent/table.tsv"), ValidationError);
}

TEST(Bound, AreaChecks) {
  const auto checks = check_subembedding_areas(default_region_table());
  ASSERT_FALSE(checks.empty());
  for (const AreaCheck& a : checks) {
    if (a.name == "R_A") {
      EXPECT_EQ(a.implied, 1);
      EXPECT_TRUE(a.ok());
    }
  }
}

TEST(Bound, Report) {
  const BoundReport r = bound_report(default_region_table(), 12);
  EXPECT_EQ(r.rows.size(), 19u);
  EXPECT_EQ(r.r, 12);
  EXPECT_LE(r.total_floor, r.total);
  EXPECT_NE(r.text().find("34.374"), std::string::npos);
  EXPECT_NE(r.tsv().find("R_A\t"), std::string::npos);
}
