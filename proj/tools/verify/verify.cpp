#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "chordarr/bound.hpp"
#include "chordarr/construction.hpp"
#include "chordarr/counter.hpp"
#include "chordarr/independence.hpp"
#include "chordarr/lgv.hpp"

namespace chordarr::verify {

namespace {

using Clock = std::chrono::steady_clock;

Result make(bool ok, std::string detail) {
  Result r;
  r.passed = ok;
  r.detail = std::move(detail);
  return r;
}

Matching random_matching(int k, std::mt19937_64& rng) {
  std::vector<Label> labels(static_cast<std::size_t>(2 * k));
  for (int i = 0; i < 2 * k; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<std::pair<Label, Label>> pairs;
  for (int i = 0; i < k; ++i) {
    pairs.emplace_back(labels[static_cast<std::size_t>(2 * i)], labels[static_cast<std::size_t>(2 * i + 1)]);
  }
  return Matching::from_pairs(pairs);
}

BigCount count_plain(const Matching& m, unsigned threads) {
  CountOptions o;
  o.threads = threads;
  return count_arrangements(m, o);
}

Result bn_golden(const Options& opts, int from, int to) {
  static const std::vector<std::uint64_t> golden = {1, 1, 2, 8, 62, 908, 24698, 1232944, 112018190};
  const auto t0 = Clock::now();
  std::ostringstream os;
  bool ok = true;
  for (int n = from; n <= to; ++n) {
    const BigCount got = count_plain(pseudoline_matching(n), opts.threads);
    const bool hit = got == golden[static_cast<std::size_t>(n - 1)];
    ok = ok && hit;
    if (!hit) os << "B" << n << " = " << got << " expected " << golden[static_cast<std::size_t>(n - 1)] << "; ";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (to <= 8 && secs >= 60.0) {
    ok = false;
    os << "took " << secs << " s, limit 60 s; ";
  }
  if (ok) os << "B" << from << "..B" << to << " exact";
  return make(ok, os.str());
}

Result warmup(const Options& opts) {
  std::ostringstream os;
  const Pattern p = Pattern::parse("matousek");
  const Matching unit = extract_from_pattern(p, Window{{Rational(9, 8), Rational(9, 8)}, 1, std::nullopt});
  const Matching side2 = extract_from_pattern(p, Window{{Rational(25, 16), Rational(25, 16)}, 2, std::nullopt});
  const BigCount a = count_plain(unit, opts.threads);
  const BigCount b = count_plain(side2, opts.threads);
  const LgvMatrix m2 = lgv_matrix(2);
  const std::vector<BigCount> shown = {2, 1, 0, 1, 6, 1, 0, 1, 2};
  const bool matrix_ok = m2.dim == 3 && m2.entries == shown;
  const BigCount l1 = lgv_count(1), l2 = lgv_count(2);
  os << "unit tile " << a << ", side-2 window " << b << ", lgv(1) " << l1 << ", lgv(2) " << l2
     << ", matrix " << (matrix_ok ? "matches" : "differs");
  return make(a == 2 && b == 20 && l1 == 2 && l2 == 20 && matrix_ok, os.str());
}

Result oracle(const Options& opts) {
  std::vector<Matching> corpus;
  for (int k = 1; k <= 5; ++k) {
    for (Matching& m : matchings_up_to_rotation(k)) corpus.push_back(std::move(m));
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) corpus.push_back(random_matching(6 + i % 3, rng));
  std::size_t bad = 0;
  std::string first;
  for (const Matching& m : corpus) {
    const BigCount plain = count_plain(m, opts.threads);
    IndependenceOptions io;
    io.threads = opts.threads;
    const BigCount split = count_with_independence(m, io);
    std::set<Chirotope> seen;
    const std::uint64_t listed = enumerate_arrangements(m, [&](const Embedding& e) { seen.insert(chirotope(e, m)); });
    const bool ok = plain == split && BigCount(static_cast<unsigned long>(listed)) == plain && seen.size() == listed;
    if (!ok && bad++ == 0) {
      std::ostringstream os;
      os << m << ": plain " << plain << ", independence " << split << ", enumerated " << listed << ", distinct "
         << seen.size();
      first = os.str();
    }
  }
  std::ostringstream os;
  os << corpus.size() << " matchings, " << bad << " disagreements";
  if (bad) os << "; first: " << first;
  return make(bad == 0, os.str());
}

Result lgv_direct(const Options& opts) {
  std::ostringstream os;
  bool ok = true;
  for (int s = 1; s <= 3; ++s) {
    const BigCount det = lgv_count(s);
    const BigCount direct = count_plain(grid_window_matching(s), opts.threads);
    os << "s=" << s << ": " << det << (det == direct ? " = " : " != ") << direct << "; ";
    ok = ok && det == direct;
  }
  return make(ok, os.str());
}

Result lgv_50(const Options&) {
  const auto t0 = Clock::now();
  const BigCount v = lgv_count(50);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream os;
  os << "lgv(50) has " << bit_length(v) << " bits, " << secs << " s";
  return make(v > 0 && secs <= 300.0, os.str());
}

Result lgv_500(const Options&) {
  const BigCount v = lgv_count(500);
  std::ostringstream os;
  os << "log2 lgv(500) >= " << log2_lower(v) << ", " << to_decimal(v).size() << " digits";
  return make(log2_lower(v) >= 349033, os.str());
}

Result geometry(const Options&) {
  std::multiset<Rational> want;
  for (const auto& [n, d] : std::vector<std::pair<long, long>>{{1, 12}, {1, 30}, {1, 30}, {1, 60}, {1, 35},
                                                               {1, 105}, {1, 14}, {1, 35}, {1, 42}, {1, 35},
                                                               {8, 105}, {1, 15}, {1, 15}, {4, 15}, {1, 10},
                                                               {2, 3}, {1, 15}, {1, 1}, {1, 3}}) {
    want.insert(Rational(n, d));
  }
  std::multiset<Rational> got;
  for (const Region& r : region_areas()) got.insert(r.area);
  std::ostringstream os;
  os << got.size() << " regions, area multiset " << (got == want ? "matches" : "differs");
  return make(got.size() == 19 && got == want, os.str());
}

Result bounds(const Options&) {
  std::ostringstream os;
  const Rational c = matching_bound(default_region_table());
  const Rational final12 = pseudoline_bound(c, 12);
  RegionEntry tile{"tile", BigCount(2), std::nullopt, Rational(3, 4)};
  RegionEntry tile2{"tile2", BigCount(20), std::nullopt, Rational(3, 16)};
  const Rational cm = matching_bound({tile});
  const Rational fm = pseudoline_bound(cm, 3);
  const Rational fw = pseudoline_bound(matching_bound({tile2}), 3);
  const bool ok = c >= Rational(34374, 1000) && final12 >= Rational(2604, 10000) && cm == Rational(3, 4) &&
                  fm == Rational(1, 8) && fw > Rational(135, 1000);
  os << "table c >= " << decimal_floor(c, 6) << ", final >= " << decimal_floor(final12, 6) << "; tile " << cm
     << " -> " << fm << "; warm-up final >= " << decimal_floor(fw, 6);
  return make(ok, os.str());
}

Result determinism(const Options&) {
  std::vector<Matching> ms{pseudoline_matching(7)};
  // Random matchings are mostly sparse; keep the three most crossed of a batch
  // so the counts are big enough to exercise the frontier split.
  std::mt19937_64 rng(77);
  std::vector<Matching> pool;
  for (int i = 0; i < 200; ++i) pool.push_back(random_matching(7, rng));
  std::stable_sort(pool.begin(), pool.end(), [](const Matching& x, const Matching& y) {
    return x.crossing_pairs() > y.crossing_pairs();
  });
  ms.insert(ms.end(), pool.begin(), pool.begin() + 3);
  std::ostringstream os;
  bool ok = true;
  for (const Matching& m : ms) {
    const BigCount a = count_plain(m, 1), b = count_plain(m, 2), c = count_plain(m, 8);
    os << a << (a == b && b == c ? "" : " (thread-dependent!)") << "; ";
    ok = ok && a == b && b == c;
  }
  return make(ok, os.str());
}

Result declared(const Options&) {
  return make(true, "full recomputation of the large region counts is out of scope; use `chordarr count "
                    "--recompute-region` for long runs");
}

long parity_index(int s, int i, int j, bool broken) {
  const long top = 2L * s - std::abs(s - i) - std::abs(s - j);
  return top + (broken ? 2L : 3L) * std::abs(i - j);
}

Result lgv_parity(const Options& opts) {
  for (int s = 1; s <= 100; ++s) {
    for (int i = 1; i < 2 * s; ++i) {
      for (int j = 1; j < 2 * s; ++j) {
        if (parity_index(s, i, j, opts.inject_parity_fault) % 2 != 0) {
          std::ostringstream os;
          os << "odd binomial index at s=" << s << ", (" << i << ", " << j << ")";
          return make(false, os.str());
        }
      }
    }
  }
  for (int s = 1; s <= 20; ++s) {
    const LgvMatrix m = lgv_matrix(s);
    for (int i = 0; i < m.dim; ++i) {
      for (int j = 0; j < i; ++j) {
        if (m.at(i, j) != m.at(j, i)) return make(false, "matrix not symmetric at s=" + std::to_string(s));
      }
    }
  }
  return make(true, "index always even for s <= 100; matrices symmetric for s <= 20");
}

}  // namespace

const char* tier_name(Tier t) {
  switch (t) {
    case Tier::kFast: return "fast";
    case Tier::kSlow: return "slow";
    case Tier::kOptional: return "optional";
  }
  return "?";
}

std::vector<Check> all_checks() {
  return {
      {1, "golden B1..B8", Tier::kFast, [](const Options& o) { return bn_golden(o, 1, 8); }},
      {1, "golden B9", Tier::kSlow, [](const Options& o) { return bn_golden(o, 9, 9); }},
      {2, "warm-up counts and 3x3 matrix", Tier::kFast, warmup},
      {3, "independence / enumeration / plain counting agree", Tier::kSlow, oracle},
      {4, "lgv equals direct count, s <= 3", Tier::kFast, lgv_direct},
      {4, "lgv(50) within 5 minutes", Tier::kFast, lgv_50},
      {4, "lgv(500) log2 >= 349033", Tier::kOptional, lgv_500},
      {5, "19 regions with published areas", Tier::kFast, geometry},
      {6, "bound pipeline constants", Tier::kFast, bounds},
      {7, "counts independent of thread count", Tier::kFast, determinism},
      {8, "large region recomputation (declared out of scope)", Tier::kOptional, declared},
      {0, "lgv index parity and symmetry", Tier::kFast, lgv_parity},
  };
}

std::vector<Result> run_checks(const std::vector<Tier>& tiers, const Options& opts,
                               const std::function<void(const Result&)>& report) {
  std::vector<Result> out;
  for (const Check& c : all_checks()) {
    if (std::find(tiers.begin(), tiers.end(), c.tier) == tiers.end()) continue;
    const auto t0 = Clock::now();
    Result r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r = make(false, std::string("exception: ") + e.what());
    }
    r.criterion = c.criterion;
    r.name = c.name;
    r.tier = c.tier;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const Result& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  ";
  if (r.criterion > 0) {
    os << "criterion " << r.criterion;
  } else {
    os << "support    ";
  }
  os << " [" << tier_name(r.tier) << "] " << r.name << ": " << r.detail << " (" << r.seconds << " s)";
  return os.str();
}

}  // namespace chordarr::verify
