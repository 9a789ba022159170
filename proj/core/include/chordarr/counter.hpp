#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "chordarr/big_count.hpp"
#include "chordarr/embedding.hpp"
#include "chordarr/matching.hpp"

namespace chordarr {

using InsertionOrder = std::vector<ChordId>;

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;
inline constexpr int kDefaultWeightSamples = 64;

struct CountOptions {
  // Explicit insertion order; the default is weight-ascending (heaviest last).
  std::optional<InsertionOrder> order;
  unsigned threads = 0;  // 0: all hardware threads
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  int weight_samples = kDefaultWeightSamples;
};

// Caps the number of partial embeddings a run may materialize. Shared by all
// workers of one run; workers charge in batches.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  // Throws BudgetExceeded once the running total passes the limit.
  void charge(std::uint64_t n);
  std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

// |arr(M)|: every chord but the last is inserted in all ways, the last one's
// insertions are counted. Independent of order and thread count.
BigCount count_arrangements(const Matching& m, const CountOptions& opts = {});

// Number of ways to complete `base` by inserting `order` (in that sequence).
BigCount count_extensions(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                          unsigned threads, Budget& budget);

// Streams every complete extension of `base` along `order`. Single-threaded;
// returns the number of embeddings delivered.
std::uint64_t enumerate_extensions(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                                   Budget& budget, const std::function<void(const Embedding&)>& sink);

std::uint64_t enumerate_arrangements(const Matching& m, const std::function<void(const Embedding&)>& sink,
                                     const CountOptions& opts = {});

// Inserts `order` one chord at a time, each time picking uniformly among the
// valid routes. Restarts on dead ends.
Embedding sample_extension(const Embedding& base, const Matching& m, std::span<const ChordId> order,
                           std::mt19937_64& rng);

Embedding sample_arrangement(const Matching& m, std::uint64_t seed);

// w_i: mean number of ways to insert chord i into sampled arrangements of the
// other chords.
std::vector<double> estimate_weights(const Matching& m, int samples, std::uint64_t seed);

// Ascending weight, ties by chord id.
InsertionOrder default_order(const Matching& m, std::span<const double> weights);

// Throws ValidationError unless order is a permutation of 0..k-1.
void validate_order(const Matching& m, std::span<const ChordId> order);

}  // namespace chordarr
