#include "chordarr/counter.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "chordarr/errors.hpp"
#include "chordarr/parallel.hpp"

namespace chordarr {

void Budget::charge(std::uint64_t n) {
  const std::uint64_t total = used_.fetch_add(n, std::memory_order_relaxed) + n;
  if (total > limit_) {
    throw BudgetExceeded("embedding budget of " + std::to_string(limit_) +
                         " partial embeddings exceeded; raise --budget to continue");
  }
}

namespace {

constexpr std::uint64_t kChargeBatch = 1024;

// Depth-first expansion of one subtree. Each depth keeps its own scratch
// embedding so children reuse the parent's allocations.
class SubtreeCounter {
 public:
  SubtreeCounter(const Matching& m, std::span<const ChordId> order, Budget& budget)
      : m_(m), order_(order), budget_(budget), scratch_(order.size()) {}

  ~SubtreeCounter() = default;

  void run(const Embedding& e, std::size_t level) {
    const std::size_t last = order_.size() - 1;
    if (level == last) {
      RouteWalker walker(e, m_, order_[last]);
      if (auto v = walker.count_u64()) {
        acc_.add(*v);
      } else {
        acc_.add(walker.count_big());
      }
      return;
    }
    const ChordId c = order_[level];
    RouteWalker walker(e, m_, c);
    walker.for_each([&](std::span<const HalfEdgeId> edges) {
      Embedding& child = scratch_[level];
      child = e;
      child.insert_chord(m_, c, edges);
      charge();
      run(child, level + 1);
    });
  }

  void flush() {
    if (pending_ > 0) {
      budget_.charge(pending_);
      pending_ = 0;
    }
  }

  const CountAccumulator& total() const noexcept { return acc_; }

 private:
  void charge() {
    if (++pending_ >= kChargeBatch) flush();
  }

  const Matching& m_;
  std::span<const ChordId> order_;
  Budget& budget_;
  std::vector<Embedding> scratch_;
  CountAccumulator acc_;
  std::uint64_t pending_ = 0;
};

void check_extension_order(const Embedding& base, const Matching& m, std::span<const ChordId> order) {
  std::vector<bool> seen(static_cast<std::size_t>(m.size()), false);
  for (ChordId c : order) {
    if (c < 0 || c >= m.size()) throw ValidationError("chord id " + std::to_string(c) + " out of range");
    if (seen[static_cast<std::size_t>(c)] || base.inserted(c)) {
      throw ValidationError("chord " + std::to_string(c) + " listed twice or already inserted");
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
}

}  // namespace

BigCount count_extensions(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                          unsigned threads, Budget& budget) {
  check_extension_order(base, m, order);
  if (order.empty()) return 1;
  threads = resolve_threads(threads);

  // Expand level by level until there is enough independent work for the
  // pool, then finish each frontier embedding depth-first.
  std::vector<Embedding> frontier{base};
  std::size_t level = 0;
  const std::size_t target = threads == 1 ? 1 : static_cast<std::size_t>(threads) * 64;
  while (level + 1 < order.size() && frontier.size() < target) {
    std::vector<Embedding> next;
    const ChordId c = order[level];
    for (const Embedding& e : frontier) {
      RouteWalker(e, m, c).for_each([&](std::span<const HalfEdgeId> edges) {
        Embedding child = e;
        child.insert_chord(m, c, edges);
        next.push_back(std::move(child));
      });
    }
    budget.charge(next.size());
    frontier = std::move(next);
    ++level;
    if (frontier.empty()) return 0;
  }

  std::vector<CountAccumulator> partial(frontier.size());
  parallel_for(frontier.size(), threads, [&](std::size_t i, unsigned) {
    SubtreeCounter counter(m, order, budget);
    counter.run(frontier[i], level);
    counter.flush();
    partial[i] = counter.total();
  });
  CountAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

std::uint64_t enumerate_extensions(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                                   Budget& budget, const std::function<void(const Embedding&)>& sink) {
  check_extension_order(base, m, order);
  std::vector<Embedding> scratch(order.size());
  std::uint64_t delivered = 0;
  std::uint64_t pending = 0;
  auto visit = [&](auto&& self, const Embedding& e, std::size_t level) -> void {
    if (level == order.size()) {
      ++delivered;
      sink(e);
      return;
    }
    const ChordId c = order[level];
    RouteWalker(e, m, c).for_each([&](std::span<const HalfEdgeId> edges) {
      Embedding& child = scratch[level];
      child = e;
      child.insert_chord(m, c, edges);
      if (++pending >= kChargeBatch) {
        budget.charge(pending);
        pending = 0;
      }
      self(self, child, level + 1);
    });
  };
  visit(visit, base, 0);
  budget.charge(pending);
  return delivered;
}

void validate_order(const Matching& m, std::span<const ChordId> order) {
  if (static_cast<int>(order.size()) != m.size()) {
    throw ValidationError("insertion order has " + std::to_string(order.size()) + " entries, matching has " +
                          std::to_string(m.size()) + " chords");
  }
  check_extension_order(Embedding(m), m, order);
}

namespace {

InsertionOrder resolve_order(const Matching& m, const CountOptions& opts) {
  if (opts.order) {
    validate_order(m, *opts.order);
    return *opts.order;
  }
  const auto weights = estimate_weights(m, opts.weight_samples, opts.seed);
  return default_order(m, weights);
}

}  // namespace

BigCount count_arrangements(const Matching& m, const CountOptions& opts) {
  if (m.empty()) return 1;
  const InsertionOrder order = resolve_order(m, opts);
  Budget budget(opts.budget);
  return count_extensions(Embedding(m), m, order, opts.threads, budget);
}

std::uint64_t enumerate_arrangements(const Matching& m, const std::function<void(const Embedding&)>& sink,
                                     const CountOptions& opts) {
  const InsertionOrder order = m.empty() ? InsertionOrder{} : resolve_order(m, opts);
  Budget budget(opts.budget);
  return enumerate_extensions(Embedding(m), m, order, budget, sink);
}

Embedding sample_extension(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                           std::mt19937_64& rng) {
  check_extension_order(base, m, order);
  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Embedding e = base;
    bool dead_end = false;
    for (ChordId c : order) {
      RouteWalker walker(e, m, c);
      const auto counts = walker.face_counts_u64();
      const std::uint64_t total = counts[walker.start_face()];
      if (total == std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("too many insertion routes to sample in 64 bits");
      }
      if (total == 0) {
        dead_end = true;
        break;
      }
      std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
      std::uint64_t r = pick(rng);
      std::vector<HalfEdgeId> edges;
      FaceId f = walker.start_face();
      while (f != walker.target_face()) {
        const HalfEdgeId first = e.face_edge(f);
        HalfEdgeId h = first;
        bool moved = false;
        do {
          if (walker.crossable(h)) {
            const FaceId g = e.half_edge(static_cast<HalfEdgeId>(h ^ 1)).face;
            const std::uint64_t sub = counts[g];
            if (r < sub) {
              edges.push_back(h);
              f = g;
              moved = true;
              break;
            }
            r -= sub;
          }
          h = e.half_edge(h).next;
        } while (h != first);
        if (!moved) throw InvariantViolation("route sampling lost its way");
      }
      e.insert_chord(m, c, edges);
    }
    if (!dead_end) return e;
  }
  throw std::runtime_error("no complete arrangement found after repeated sampling");
}

Embedding sample_arrangement(const Matching& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  InsertionOrder order(static_cast<std::size_t>(m.size()));
  std::iota(order.begin(), order.end(), 0);
  return sample_extension(Embedding(m), m, order, rng);
}

std::vector<double> estimate_weights(const Matching& m, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("weight estimation needs at least one sample");
  std::mt19937_64 rng(seed);
  const Embedding empty(m);
  std::vector<double> weights(static_cast<std::size_t>(m.size()), 0.0);
  for (ChordId c = 0; c < m.size(); ++c) {
    InsertionOrder others;
    for (ChordId o = 0; o < m.size(); ++o) {
      if (o != c) others.push_back(o);
    }
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Embedding e = sample_extension(empty, m, others, rng);
      sum += count_insertions(e, m, c).get_d();
    }
    weights[static_cast<std::size_t>(c)] = sum / samples;
  }
  return weights;
}

InsertionOrder default_order(const Matching& m, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != m.size()) throw ValidationError("one weight per chord expected");
  InsertionOrder order(static_cast<std::size_t>(m.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](ChordId a, ChordId b) {
    return weights[static_cast<std::size_t>(a)] < weights[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace chordarr
