#include "chordarr/independence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chordarr/errors.hpp"
#include "chordarr/parallel.hpp"

namespace chordarr {

namespace {

std::vector<ChordId> all_chords(const Matching& m) {
  std::vector<ChordId> ids(static_cast<std::size_t>(m.size()));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

void check_pair(const Matching& m, ChordId c, ChordId c2) {
  if (c < 0 || c >= m.size() || c2 < 0 || c2 >= m.size()) throw ValidationError("chord id out of range");
  if (c == c2) throw ValidationError("independence needs two distinct chords");
}

}  // namespace

bool independent_within(const Matching& m, std::span<const ChordId> active, ChordId c, ChordId c2) {
  check_pair(m, c, c2);
  std::vector<ChordId> both;
  for (ChordId g : active) {
    if (g == c || g == c2) continue;
    const bool xc = m.crosses_unchecked(g, c);
    const bool xc2 = m.crosses_unchecked(g, c2);
    if (!xc && !xc2 && m.label_right_of(g, m.chord(c).lo) != m.label_right_of(g, m.chord(c2).lo)) {
      return true;
    }
    if (xc && xc2) both.push_back(g);
  }
  if (both.empty()) return true;
  if (m.crosses_unchecked(c, c2)) return false;
  for (std::size_t i = 0; i < both.size(); ++i) {
    for (std::size_t j = i + 1; j < both.size(); ++j) {
      if (m.crosses_unchecked(both[i], both[j])) return false;
    }
  }
  return true;
}

bool independent(const Matching& m, ChordId c, ChordId c2) {
  const auto ids = all_chords(m);
  return independent_within(m, ids, c, c2);
}

RgbPartition partition_rgb(const Matching& m, std::span<const double> weights, int trials, std::uint64_t seed,
                           std::span<const ChordId> chords, std::span<const ChordId> context) {
  if (trials < 1) throw ValidationError("partition search needs at least one trial");
  if (static_cast<int>(weights.size()) != m.size()) throw ValidationError("one weight per chord expected");
  const auto everything = all_chords(m);
  if (chords.empty()) chords = everything;
  if (context.empty()) context = everything;

  const std::size_t n = chords.size();
  std::vector<std::uint8_t> indep(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool v = independent_within(m, context, chords[i], chords[j]);
      indep[i * n + j] = indep[j * n + i] = v;
    }
  }
  auto lw = [&](std::size_t i) { return std::log2(std::max(1.0, weights[static_cast<std::size_t>(chords[i])])); };

  RgbPartition best;
  best.g.assign(chords.begin(), chords.end());
  double best_score = -1.0;
  double best_gap = 0.0;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < trials; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> r, b, g;
    double wr = 0.0, wb = 0.0;
    auto fits = [&](std::size_t i, const std::vector<std::size_t>& other) {
      return std::all_of(other.begin(), other.end(), [&](std::size_t j) { return indep[i * n + j] != 0; });
    };
    for (std::size_t i : perm) {
      // Offer the chord to the lighter side first.
      const bool r_first = wr <= wb;
      auto& first = r_first ? r : b;
      auto& second = r_first ? b : r;
      double& wfirst = r_first ? wr : wb;
      double& wsecond = r_first ? wb : wr;
      if (fits(i, second)) {
        first.push_back(i);
        wfirst += lw(i);
      } else if (fits(i, first)) {
        second.push_back(i);
        wsecond += lw(i);
      } else {
        g.push_back(i);
      }
    }
    if (r.empty() || b.empty()) continue;
    const double score = std::min(wr, wb);
    const double gap = std::abs(wr - wb);
    if (score > best_score || (score == best_score && gap < best_gap)) {
      best_score = score;
      best_gap = gap;
      auto ids = [&](std::vector<std::size_t> v) {
        std::vector<ChordId> out;
        for (std::size_t i : v) out.push_back(chords[i]);
        std::sort(out.begin(), out.end());
        return out;
      };
      best.r = ids(r);
      best.b = ids(b);
      best.g = ids(g);
      best.log2_weight_r = wr;
      best.log2_weight_b = wb;
    }
  }
  return best;
}

namespace {

class IndependenceCounter {
 public:
  IndependenceCounter(const Matching& m, const IndependenceOptions& opts, std::vector<double> weights)
      : m_(m), opts_(opts), weights_(std::move(weights)), budget_(opts.budget) {}

  BigCount top() {
    const Embedding base(m_);
    return count(base, all_chords(m_), 0, resolve_threads(opts_.threads));
  }

 private:
  InsertionOrder by_weight(std::vector<ChordId> ids) const {
    std::stable_sort(ids.begin(), ids.end(), [&](ChordId a, ChordId b) {
      return weights_[static_cast<std::size_t>(a)] < weights_[static_cast<std::size_t>(b)];
    });
    return ids;
  }

  // Ways to complete `base` with the chords in `todo`.
  BigCount count(const Embedding& base, std::vector<ChordId> todo, int depth, unsigned threads) {
    if (todo.empty()) return 1;
    RgbPartition part;
    if (depth < opts_.depth_limit && todo.size() >= 2) {
      std::vector<ChordId> context;
      for (ChordId c = 0; c < m_.size(); ++c) {
        if (base.inserted(c)) context.push_back(c);
      }
      context.insert(context.end(), todo.begin(), todo.end());
      std::sort(context.begin(), context.end());
      part = partition_rgb(m_, weights_, opts_.trials, opts_.seed + static_cast<std::uint64_t>(depth), todo, context);
    }
    if (!part.split()) return count_extensions(base, m_, by_weight(std::move(todo)), threads, budget_);

    const InsertionOrder g = by_weight(part.g);
    auto product = [&](const Embedding& e) {
      BigCount r = count(e, part.r, depth + 1, 1);
      if (r == 0) return r;
      return BigCount(r * count(e, part.b, depth + 1, 1));
    };
    if (g.empty()) return product(base);

    std::vector<Embedding> layer;
    enumerate_extensions(base, m_, g, budget_, [&](const Embedding& e) { layer.push_back(e); });
    std::vector<BigCount> partial(layer.size());
    parallel_for(layer.size(), threads, [&](std::size_t i, unsigned) { partial[i] = product(layer[i]); });
    BigCount total = 0;
    for (const auto& p : partial) total += p;
    return total;
  }

  const Matching& m_;
  const IndependenceOptions& opts_;
  std::vector<double> weights_;
  Budget budget_;
};

}  // namespace

BigCount count_with_independence(const Matching& m, const IndependenceOptions& opts) {
  if (opts.depth_limit < 0) throw ValidationError("depth limit must be nonnegative");
  if (opts.trials < 1) throw ValidationError("partition search needs at least one trial");
  if (m.empty()) return 1;
  IndependenceCounter counter(m, opts, estimate_weights(m, opts.weight_samples, opts.seed));
  return counter.top();
}

}  // namespace chordarr
