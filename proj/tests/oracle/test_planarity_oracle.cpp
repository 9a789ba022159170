// Brute force over crossing orders: a tuple of per-chord crossing sequences is
// an arrangement iff the map it induces on the disc has Euler characteristic 2.
#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "chordarr/counter.hpp"
#include "chordarr/embedding.hpp"

using namespace chordarr;

namespace {

using Sequences = std::vector<std::vector<ChordId>>;

// Faces of the rotation system built from the sequences, then V - E + F.
long euler_characteristic(const Matching& m, const Sequences& seq) {
  const int k = m.size();
  const int n = 2 * k;
  int darts = 0;
  auto new_edge = [&] {
    darts += 2;
    return darts - 2;
  };
  std::vector<int> next_b(static_cast<std::size_t>(n)), prev_b(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const int e = new_edge();  // e leaves l towards l+1, e^1 leaves l+1 towards l
    next_b[static_cast<std::size_t>(l)] = e;
    prev_b[static_cast<std::size_t>((l + 1) % n)] = e ^ 1;
  }
  // seg[c][j]: edge between node j and j+1 along c; even dart points towards hi.
  std::vector<std::vector<int>> seg(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    for (std::size_t j = 0; j <= seq[static_cast<std::size_t>(c)].size(); ++j) seg[static_cast<std::size_t>(c)].push_back(new_edge());
  }
  std::vector<std::vector<int>> rotation;
  for (int l = 0; l < n; ++l) {
    const ChordId c = m.chord_at(l);
    const auto& s = seg[static_cast<std::size_t>(c)];
    const int chord_dart = m.chord(c).lo == l ? s.front() : (s.back() ^ 1);
    rotation.push_back({next_b[static_cast<std::size_t>(l)], chord_dart, prev_b[static_cast<std::size_t>(l)]});
  }
  std::map<std::pair<ChordId, ChordId>, std::pair<std::size_t, std::size_t>> pos;
  for (int c = 0; c < k; ++c) {
    const auto& s = seq[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto& p = pos[{std::min(c, s[i]), std::max(c, s[i])}];
      (c < s[i] ? p.first : p.second) = i;
    }
  }
  for (const auto& [pair, where] : pos) {
    const auto [c1, c2] = pair;
    const auto& s1 = seg[static_cast<std::size_t>(c1)];
    const auto& s2 = seg[static_cast<std::size_t>(c2)];
    const int c1f = s1[where.first + 1], c1b = s1[where.first] ^ 1;
    const int c2f = s2[where.second + 1], c2b = s2[where.second] ^ 1;
    if (m.label_right_of(c1, m.chord(c2).lo)) {
      rotation.push_back({c1f, c2f, c1b, c2b});
    } else {
      rotation.push_back({c1f, c2b, c1b, c2f});
    }
  }
  std::vector<int> sigma(static_cast<std::size_t>(darts), -1);
  for (const auto& r : rotation) {
    for (std::size_t i = 0; i < r.size(); ++i) sigma[static_cast<std::size_t>(r[i])] = r[(i + 1) % r.size()];
  }
  std::vector<char> seen(static_cast<std::size_t>(darts), 0);
  long faces = 0;
  for (int d = 0; d < darts; ++d) {
    if (seen[static_cast<std::size_t>(d)]) continue;
    ++faces;
    for (int x = d; !seen[static_cast<std::size_t>(x)]; x = sigma[static_cast<std::size_t>(x ^ 1)]) seen[static_cast<std::size_t>(x)] = 1;
  }
  const long v = static_cast<long>(rotation.size());
  const long e = darts / 2;
  return v - e + faces;
}

double search_size(const Matching& m) {
  double total = 1;
  for (ChordId c = 0; c < m.size(); ++c) {
    const auto n = crossing_set(m, c).size();
    for (std::size_t i = 2; i <= n; ++i) total *= static_cast<double>(i);
  }
  return total;
}

std::set<Sequences> planar_sequences(const Matching& m) {
  Sequences seq;
  for (ChordId c = 0; c < m.size(); ++c) seq.push_back(crossing_set(m, c));
  std::set<Sequences> out;
  // Odometer over the permutations of every chord's crossing set.
  const std::size_t k = seq.size();
  while (true) {
    if (euler_characteristic(m, seq) == 2) out.insert(seq);
    std::size_t i = 0;
    while (i < k && !std::next_permutation(seq[i].begin(), seq[i].end())) ++i;
    if (i == k) break;
  }
  return out;
}

std::set<Sequences> enumerated_sequences(const Matching& m) {
  std::set<Sequences> out;
  CountOptions o;
  o.threads = 1;
  enumerate_arrangements(m, [&](const Embedding& e) { out.insert(crossing_sequences(e)); }, o);
  return out;
}

}  // namespace

TEST(PlanarityOracle, PseudolinesOfOrderFour) {
  const Matching m = pseudoline_matching(4);
  const auto brute = planar_sequences(m);
  EXPECT_EQ(brute.size(), 8u);
  EXPECT_EQ(brute, enumerated_sequences(m));
}

TEST(PlanarityOracle, AllSmallMatchings) {
  int checked = 0;
  for (int k = 1; k <= 5; ++k) {
    for (const Matching& m : matchings_up_to_rotation(k)) {
      if (search_size(m) > 2e5) continue;
      const auto brute = planar_sequences(m);
      const auto listed = enumerated_sequences(m);
      ASSERT_EQ(brute, listed) << m;
      CountOptions o;
      o.threads = 1;
      ASSERT_EQ(BigCount(static_cast<unsigned long>(brute.size())), count_arrangements(m, o)) << m;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}
