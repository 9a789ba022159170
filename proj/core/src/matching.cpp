#include "chordarr/matching.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "chordarr/errors.hpp"

namespace chordarr {

Matching::Matching(std::vector<Chord> chords) : chords_(std::move(chords)) {
  const int k = size();
  owner_.assign(static_cast<std::size_t>(2 * k), -1);
  for (int c = 0; c < k; ++c) {
    owner_[static_cast<std::size_t>(chords_[c].lo)] = c;
    owner_[static_cast<std::size_t>(chords_[c].hi)] = c;
  }
  cross_.assign(static_cast<std::size_t>(k * k), 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Chord& a = chords_[i];
      const Chord& b = chords_[j];
      const bool x = (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
                     (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi);
      cross_[static_cast<std::size_t>(i * k + j)] = x ? 1 : 0;
    }
  }
}

Matching Matching::from_pairs(std::span<const std::pair<Label, Label>> pairs) {
  if (pairs.empty()) throw ValidationError("matching needs at least one chord");
  const long k = static_cast<long>(pairs.size());
  if (k > kMaxChords) {
    throw ValidationError("matching has " + std::to_string(k) + " chords; at most " +
                          std::to_string(kMaxChords) + " are supported");
  }
  std::vector<bool> used(static_cast<std::size_t>(2 * k), false);
  std::vector<Chord> chords;
  chords.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    for (Label l : {a, b}) {
      if (l < 0 || l >= 2 * k) {
        throw ValidationError("label " + std::to_string(l) + " out of range [0, " +
                              std::to_string(2 * k) + ")");
      }
      if (used[static_cast<std::size_t>(l)]) {
        throw ValidationError("duplicate label " + std::to_string(l));
      }
      used[static_cast<std::size_t>(l)] = true;
    }
    chords.push_back({std::min(a, b), std::max(a, b)});
  }
  return Matching(std::move(chords));
}

Matching Matching::from_pairs(std::initializer_list<std::pair<Label, Label>> pairs) {
  return from_pairs(std::span<const std::pair<Label, Label>>(pairs.begin(), pairs.size()));
}

std::vector<std::pair<Label, Label>> Matching::pairs() const {
  std::vector<std::pair<Label, Label>> out;
  out.reserve(chords_.size());
  for (const Chord& c : chords_) out.emplace_back(c.lo, c.hi);
  return out;
}

int Matching::crossing_pairs() const noexcept {
  int n = 0;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) n += crosses_unchecked(i, j) ? 1 : 0;
  }
  return n;
}

namespace {

void check_chord(const Matching& m, ChordId c) {
  if (c < 0 || c >= m.size()) {
    throw ValidationError("chord id " + std::to_string(c) + " out of range");
  }
}

}  // namespace

bool crosses(const Matching& m, ChordId c1, ChordId c2) {
  check_chord(m, c1);
  check_chord(m, c2);
  if (c1 == c2) throw ValidationError("crosses() needs two distinct chords");
  return m.crosses_unchecked(c1, c2);
}

std::vector<ChordId> crossing_set(const Matching& m, ChordId c) {
  check_chord(m, c);
  std::vector<ChordId> out;
  for (ChordId o = 0; o < m.size(); ++o) {
    if (o != c && m.crosses_unchecked(c, o)) out.push_back(o);
  }
  return out;
}

Matching cyclic_shift(const Matching& m, int t) {
  if (m.empty()) return m;
  const int n = m.label_count();
  const int s = ((t % n) + n) % n;
  auto pairs = m.pairs();
  for (auto& [a, b] : pairs) {
    a = (a + s) % n;
    b = (b + s) % n;
  }
  return Matching::from_pairs(pairs);
}

Matching reflect(const Matching& m) {
  if (m.empty()) return m;
  const int n = m.label_count();
  auto pairs = m.pairs();
  for (auto& [a, b] : pairs) {
    a = n - 1 - a;
    b = n - 1 - b;
  }
  return Matching::from_pairs(pairs);
}

Matching family_matching(std::span<const int> group_sizes) {
  if (group_sizes.empty()) throw ValidationError("family needs at least one group");
  int k = 0;
  for (int g : group_sizes) {
    if (g < 1) throw ValidationError("family group sizes must be positive");
    k += g;
  }
  // Blocks A_1..A_r, then A'_1..A'_r; the t-th label of A_i pairs with the
  // (k_i + 1 - t)-th label of A'_i.
  std::vector<std::pair<Label, Label>> pairs;
  int offset = 0;
  for (int g : group_sizes) {
    for (int t = 0; t < g; ++t) pairs.emplace_back(offset + t, k + offset + (g - 1 - t));
    offset += g;
  }
  return Matching::from_pairs(pairs);
}

Matching family_matching(std::initializer_list<int> group_sizes) {
  return family_matching(std::span<const int>(group_sizes.begin(), group_sizes.size()));
}

Matching pseudoline_matching(int n) {
  if (n < 1) throw ValidationError("pseudoline order must be positive");
  std::vector<int> groups(static_cast<std::size_t>(n), 1);
  return family_matching(groups);
}

Matching submatching(const Matching& m, std::span<const ChordId> subset) {
  if (subset.empty()) return Matching();
  std::vector<Label> labels;
  for (ChordId c : subset) {
    check_chord(m, c);
    labels.push_back(m.chord(c).lo);
    labels.push_back(m.chord(c).hi);
  }
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  auto rank = [&](Label l) {
    return static_cast<Label>(std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin());
  };
  std::vector<std::pair<Label, Label>> pairs;
  for (ChordId c : subset) pairs.emplace_back(rank(m.chord(c).lo), rank(m.chord(c).hi));
  return Matching::from_pairs(pairs);
}

namespace {

std::vector<long> parse_ints(std::string_view line, std::size_t line_no) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || ptr == line.data() + i) {
      throw ParseError(line_no, "expected an integer, got '" + std::string(line.substr(i)) + "'");
    }
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      throw ParseError(line_no, "unexpected character '" + std::string(1, line[i]) + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Matching parse_matching(std::string_view text) {
  // (line number, text) of every non-blank line.
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0, line_no = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const auto row = text.substr(start, nl - start);
    if (row.find_first_not_of(" \t\r") != std::string_view::npos) lines.emplace_back(line_no, row);
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty matching text");

  const auto header = parse_ints(lines[0].second, lines[0].first);
  if (header.size() != 1 || header[0] < 1) throw ParseError(lines[0].first, "first line must be the chord count k >= 1");
  const long k = header[0];
  if (k > Matching::kMaxChords) throw ParseError(lines[0].first, "too many chords");
  if (static_cast<long>(lines.size()) - 1 != k) {
    throw ParseError(lines.back().first, "expected " + std::to_string(k) + " chord lines, found " +
                                             std::to_string(lines.size() - 1));
  }
  std::vector<std::pair<Label, Label>> pairs;
  std::vector<bool> used(static_cast<std::size_t>(2 * k), false);
  for (long i = 0; i < k; ++i) {
    const auto& [row_no, row] = lines[static_cast<std::size_t>(i) + 1];
    const auto v = parse_ints(row, row_no);
    if (v.size() != 2) throw ParseError(row_no, "expected two labels");
    for (long l : v) {
      if (l < 0 || l >= 2 * k) throw ParseError(row_no, "label " + std::to_string(l) + " out of range");
      if (used[static_cast<std::size_t>(l)]) throw ParseError(row_no, "duplicate label " + std::to_string(l));
      used[static_cast<std::size_t>(l)] = true;
    }
    pairs.emplace_back(static_cast<Label>(v[0]), static_cast<Label>(v[1]));
  }
  return Matching::from_pairs(pairs);
}

std::string serialize_matching(const Matching& m) {
  std::ostringstream os;
  os << m.size() << '\n';
  for (const Chord& c : m.chords()) os << c.lo << ' ' << c.hi << '\n';
  return os.str();
}

Matching read_matching_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open matching file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matching(ss.str());
}

Matching parse_family_spec(std::string_view spec) {
  auto fail = [&]() -> ValidationError {
    return ValidationError("malformed family spec '" + std::string(spec) +
                           "'; expected e.g. (3,2,4) or (1)x12");
  };
  std::string s;
  for (char ch : spec) {
    if (ch != ' ') s.push_back(ch);
  }
  if (s.size() < 3 || s.front() != '(') throw fail();
  const auto close = s.find(')');
  if (close == std::string::npos) throw fail();
  std::vector<int> sizes;
  std::string_view inner(s.data() + 1, close - 1);
  std::size_t i = 0;
  while (i <= inner.size()) {
    const auto comma = inner.find(',', i);
    const auto part = inner.substr(i, comma == std::string_view::npos ? std::string_view::npos : comma - i);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) throw fail();
    sizes.push_back(v);
    if (comma == std::string_view::npos) break;
    i = comma + 1;
  }
  std::string_view rest(s.data() + close + 1, s.size() - close - 1);
  if (!rest.empty()) {
    if (sizes.size() != 1 || (rest[0] != 'x' && rest[0] != '_')) throw fail();
    rest.remove_prefix(1);
    int reps = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), reps);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || reps < 1) throw fail();
    sizes.assign(static_cast<std::size_t>(reps), sizes[0]);
  }
  return family_matching(sizes);
}

namespace {

using PairList = std::vector<std::pair<Label, Label>>;

PairList canonical_pairs(PairList pairs) {
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

void all_matchings(std::vector<Label>& partner, int n, PairList& cur, std::vector<PairList>& out) {
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (partner[static_cast<std::size_t>(i)] < 0) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    out.push_back(cur);
    return;
  }
  for (int j = first + 1; j < n; ++j) {
    if (partner[static_cast<std::size_t>(j)] >= 0) continue;
    partner[static_cast<std::size_t>(first)] = j;
    partner[static_cast<std::size_t>(j)] = first;
    cur.emplace_back(first, j);
    all_matchings(partner, n, cur, out);
    cur.pop_back();
    partner[static_cast<std::size_t>(first)] = -1;
    partner[static_cast<std::size_t>(j)] = -1;
  }
}

}  // namespace

std::vector<Matching> matchings_up_to_rotation(int k) {
  if (k < 1) throw ValidationError("k must be positive");
  const int n = 2 * k;
  std::vector<PairList> raw;
  std::vector<Label> partner(static_cast<std::size_t>(n), -1);
  PairList cur;
  all_matchings(partner, n, cur, raw);

  std::set<PairList> seen;
  std::vector<Matching> out;
  for (const PairList& p : raw) {
    PairList best = canonical_pairs(p);
    for (int t = 1; t < n; ++t) {
      PairList shifted = p;
      for (auto& [a, b] : shifted) {
        a = (a + t) % n;
        b = (b + t) % n;
      }
      best = std::min(best, canonical_pairs(shifted));
    }
    if (seen.insert(best).second) out.push_back(Matching::from_pairs(best));
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Matching& m) {
  os << '{';
  for (int c = 0; c < m.size(); ++c) {
    if (c) os << ',';
    os << '(' << m.chord(c).lo << ',' << m.chord(c).hi << ')';
  }
  return os << '}';
}

}  // namespace chordarr
