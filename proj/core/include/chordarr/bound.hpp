#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chordarr/big_count.hpp"

namespace chordarr {

struct RegionEntry {
  enum class Source { kPublished, kComputed };

  std::string name;
  std::optional<BigCount> count;       // exact number of arrangements
  std::optional<Rational> log2_bound;  // used when only log2(count) >= bound is known
  Rational p;                          // occurrences per m^2
  Source source = Source::kPublished;
};

enum class LogMode {
  kFloor,    // floor(log2 n)
  kFixed60,  // log2 n truncated to 60 fractional bits
};

// Lower bound on log2 of the count of one entry. Throws ValidationError for a
// zero count or an entry with neither field.
Rational entry_log2(const RegionEntry& e, LogMode mode);

// sum p * log2(n), every term rounded down. Throws ValidationError for an empty list.
Rational matching_bound(const std::vector<RegionEntry>& entries, LogMode mode = LogMode::kFixed60);

// c / (r (r - 1)). Throws ValidationError unless r >= 2 and c > 0.
Rational pseudoline_bound(const Rational& c, int r);

// Rows "name count p"; count is a decimal integer or "log2>=N". Whitespace or
// tab separated, '#' starts a comment. Throws ParseError with the row number.
std::vector<RegionEntry> parse_region_table(std::string_view text);
std::vector<RegionEntry> load_region_table(const std::string& path);

// The published per-region counts and densities.
std::string_view default_region_table_text();
std::vector<RegionEntry> default_region_table();

// Published constants the report compares against.
inline const Rational kProvedConstant{34374, 1000};
inline const Rational kStatedConstant{3665, 100};

// For entries named after a twelve-slope region ("R_A" or "A"): the window
// area implied by region area / p, and the expected one where it is known.
struct AreaCheck {
  std::string name;
  Rational implied;
  std::optional<Rational> expected;
  bool ok() const { return !expected || *expected == implied; }
};
std::vector<AreaCheck> check_subembedding_areas(const std::vector<RegionEntry>& entries);

struct BoundReport {
  struct Row {
    std::string name;
    std::string count;  // decimal or ">=2^N"
    Rational p;
    Rational log2_lower;
    Rational contribution;
  };
  std::vector<Row> rows;
  Rational total;
  Rational total_floor;  // same sum with floor(log2 n)
  int r = 0;
  Rational pseudoline;
  std::vector<AreaCheck> areas;

  std::string text() const;
  std::string tsv() const;
};

BoundReport bound_report(const std::vector<RegionEntry>& entries, int r);

}  // namespace chordarr
