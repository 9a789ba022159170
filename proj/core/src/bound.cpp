#include "chordarr/bound.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "chordarr/construction.hpp"
#include "chordarr/errors.hpp"

namespace chordarr {

Rational entry_log2(const RegionEntry& e, LogMode mode) {
  if (e.count) {
    if (*e.count < 1) throw ValidationError("entry " + e.name + " has count " + to_decimal(*e.count));
    return mode == LogMode::kFloor ? Rational(BigCount(static_cast<unsigned long>(log2_lower(*e.count))))
                                   : log2_lower_fixed(*e.count, 60);
  }
  if (e.log2_bound) {
    if (*e.log2_bound < 0) throw ValidationError("entry " + e.name + " has a negative log2 bound");
    return *e.log2_bound;
  }
  throw ValidationError("entry " + e.name + " has neither a count nor a log2 bound");
}

Rational matching_bound(const std::vector<RegionEntry>& entries, LogMode mode) {
  if (entries.empty()) throw ValidationError("bound needs at least one region entry");
  Rational total = 0;
  for (const RegionEntry& e : entries) {
    if (e.p <= 0) throw ValidationError("entry " + e.name + " has nonpositive density");
    total += e.p * entry_log2(e, mode);
  }
  return total;
}

Rational pseudoline_bound(const Rational& c, int r) {
  if (r < 2) throw ValidationError("r must be at least 2, got " + std::to_string(r));
  if (c <= 0) throw ValidationError("matching constant must be positive");
  return c / (static_cast<long>(r) * (r - 1));
}

std::vector<RegionEntry> parse_region_table(std::string_view text) {
  std::vector<RegionEntry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t row_no = 0;
  while (std::getline(in, raw)) {
    ++row_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream row(raw);
    std::string name, count, p, extra;
    if (!(row >> name)) continue;
    if (!(row >> count >> p)) throw ParseError(row_no, "expected 'name count p'");
    if (row >> extra) throw ParseError(row_no, "trailing field '" + extra + "'");
    RegionEntry e;
    e.name = name;
    try {
      if (count.rfind("log2>=", 0) == 0) {
        e.log2_bound = parse_rational(count.substr(6));
      } else {
        e.count = parse_big_count(count);
        if (*e.count < 1) throw ValidationError("count must be positive");
      }
      e.p = parse_rational(p);
    } catch (const ValidationError& err) {
      throw ParseError(row_no, err.what());
    }
    if (e.p <= 0) throw ParseError(row_no, "density must be positive");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<RegionEntry> load_region_table(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot read region table " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_region_table(buf.str());
}

std::string_view default_region_table_text() {
  static constexpr std::string_view kTable =
      "R_A 17876503929228145018796772391568838912 1/12\n"
      "R_B 24441604062259780293677634624 1/30\n"
      "R_C 122873285610409820960 1/30\n"
      "R_D 145267240140131510094 1/60\n"
      "R_E 884854135426438 1/35\n"
      "R_F 4354539523065118 1/105\n"
      "R_G 134841117561581177808 1/28\n"
      "R_H 21027918182 1/35\n"
      "R_I 1422375838634144387571 1/84\n"
      "R_J 36797080857271908723 1/105\n"
      "R_K 42961411048824 1/210\n"
      "R_L 23454005259745292 1/60\n"
      "R_M 15342798480294823 1/60\n"
      "R_N 50236135250760 2/45\n"
      "R_O 50236135250760 1/15\n"
      "R_P 104878461268633368974367 2/63\n"
      "R_Q 104878461268633368974367 1/315\n"
      "R_R log2>=349033 1/250000\n"
      "R_S log2>=349033 1/750000\n";
  return kTable;
}

std::vector<RegionEntry> default_region_table() { return parse_region_table(default_region_table_text()); }

std::vector<AreaCheck> check_subembedding_areas(const std::vector<RegionEntry>& entries) {
  // Window areas known independently for some regions.
  static const std::map<char, Rational> kKnown = {
      {'A', 1}, {'B', 1}, {'C', 1}, {'D', 1}, {'E', 1}, {'F', 1}, {'G', 2}, {'R', 250000}, {'S', 250000},
  };
  std::map<char, Rational> region_area;
  for (const Region& r : region_areas()) region_area[r.letter] = r.area;
  std::vector<AreaCheck> checks;
  for (const RegionEntry& e : entries) {
    std::string_view n = e.name;
    if (n.rfind("R_", 0) == 0) n.remove_prefix(2);
    if (n.size() != 1 || !region_area.count(n[0])) continue;
    AreaCheck c{e.name, region_area[n[0]] / e.p, std::nullopt};
    if (auto it = kKnown.find(n[0]); it != kKnown.end()) c.expected = it->second;
    checks.push_back(std::move(c));
  }
  return checks;
}

BoundReport bound_report(const std::vector<RegionEntry>& entries, int r) {
  BoundReport rep;
  rep.r = r;
  for (const RegionEntry& e : entries) {
    BoundReport::Row row;
    row.name = e.name;
    row.count = e.count ? to_decimal(*e.count) : ">=2^" + e.log2_bound->get_str();
    row.p = e.p;
    row.log2_lower = entry_log2(e, LogMode::kFixed60);
    row.contribution = e.p * row.log2_lower;
    rep.rows.push_back(std::move(row));
  }
  rep.total = matching_bound(entries, LogMode::kFixed60);
  rep.total_floor = matching_bound(entries, LogMode::kFloor);
  rep.pseudoline = pseudoline_bound(rep.total, r);
  rep.areas = check_subembedding_areas(entries);
  return rep;
}

namespace {

std::string fmt(const Rational& q) {
  // Exact form for short rationals, else a truncated decimal.
  const std::string exact = q.get_str();
  return exact.size() <= 12 ? exact : decimal_floor(q, 6);
}

}  // namespace

std::string BoundReport::text() const {
  std::ostringstream os;
  os << std::left << std::setw(8) << "entry" << std::setw(42) << "count" << std::setw(12) << "p" << std::setw(16)
     << "log2 n >=" << "p*log2 n >=" << '\n';
  for (const Row& row : rows) {
    os << std::setw(8) << row.name << std::setw(42) << row.count << std::setw(12) << row.p.get_str()
       << std::setw(16) << decimal_floor(row.log2_lower, 6) << decimal_floor(row.contribution, 6) << '\n';
  }
  os << "matching constant c >= " << fmt(total) << "  (" << decimal_floor(total, 6) << ")\n";
  os << "  with floor(log2 n) only: c >= " << fmt(total_floor) << "  (" << decimal_floor(total_floor, 6) << ")\n";
  os << "pseudoline constant c/(r(r-1)), r = " << r << ": >= " << fmt(pseudoline) << "  ("
     << decimal_floor(pseudoline, 6) << ")\n";
  os << "rounding: every log2 is truncated toward zero (60 fractional bits) and decimals are floored;"
        " O(m) and O(n log n) terms are dropped\n";
  if (r == 12) {
    os << "clears 34.374: " << (total >= kProvedConstant ? "yes" : "no")
       << "; clears 36.65: " << (total >= kStatedConstant ? "yes" : "no") << '\n';
  }
  for (const AreaCheck& a : areas) {
    if (!a.expected) continue;
    os << "window area " << a.name << ": " << a.implied.get_str() << (a.ok() ? " ok" : " MISMATCH, expected " + a.expected->get_str()) << '\n';
  }
  return os.str();
}

std::string BoundReport::tsv() const {
  std::ostringstream os;
  os << "entry\tcount\tp\tlog2_lower\tcontribution\n";
  for (const Row& row : rows) {
    os << row.name << '\t' << row.count << '\t' << row.p.get_str() << '\t' << decimal_floor(row.log2_lower, 12)
       << '\t' << decimal_floor(row.contribution, 12) << '\n';
  }
  os << "total\t\t\t\t" << decimal_floor(total, 12) << '\n';
  os << "total_floor\t\t\t\t" << decimal_floor(total_floor, 12) << '\n';
  os << "pseudoline\t\t\t\t" << decimal_floor(pseudoline, 12) << '\n';
  return os.str();
}

}  // namespace chordarr
