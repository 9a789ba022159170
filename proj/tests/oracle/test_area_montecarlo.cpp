// Region areas against uniform sampling with a slab test written from scratch:
// the slab of slope p/q is |q y - p x| < 1/2, and x = 0 for the vertical one.
#include <array>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "chordarr/construction.hpp"

using namespace chordarr;

namespace {

// (p, q) per slope slot, in slot order.
constexpr std::array<std::array<int, 2>, 12> kSlopes = {{{0, 1},
                                                         {1, 0},
                                                         {1, 1},
                                                         {-1, 1},
                                                         {2, 1},
                                                         {-2, 1},
                                                         {3, 1},
                                                         {-3, 1},
                                                         {1, 2},
                                                         {-1, 2},
                                                         {1, 3},
                                                         {-1, 3}}};

SlabSignature signature_at(double x, double y) {
  SlabSignature s = 0;
  for (int i = 0; i < 12; ++i) {
    const auto [p, q] = kSlopes[static_cast<std::size_t>(i)];
    // Vertical slot: |x| < 1/2.
    const double v = q == 0 ? x : q * y - p * x;
    if (std::abs(v) < 0.5) s = static_cast<SlabSignature>(s | (1u << i));
  }
  return s;
}

}  // namespace

TEST(AreaOracle, MonteCarloAgreesWithExactAreas) {
  constexpr double kHalf = 4.0;
  constexpr int kSamples = 1'000'000;
  constexpr double kSigmas = 4.0;
  const double box = (2 * kHalf) * (2 * kHalf);

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-kHalf, kHalf);
  std::map<SlabSignature, long> hits;
  double max_coord = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = u(rng), y = u(rng);
    const SlabSignature s = signature_at(x, y);
    if (signature_size(s) < 3) continue;
    ++hits[canonical_signature(s)];
    max_coord = std::max({max_coord, std::abs(x), std::abs(y)});
  }
  // Everything in three or more slabs sits well inside the sampling box.
  EXPECT_LT(max_coord, 3.5);

  const auto regions = region_areas();
  ASSERT_EQ(regions.size(), 19u);
  long covered = 0;
  for (const Region& r : regions) {
    const long h = hits.count(r.signature) ? hits.at(r.signature) : 0;
    covered += h;
    const double p = static_cast<double>(h) / kSamples;
    const double est = p * box;
    const double exact = r.area.get_d();
    const double se = box * std::sqrt(std::max(exact / box * (1 - exact / box), 1e-12) / kSamples);
    EXPECT_LE(std::abs(est - exact), kSigmas * se)
        << r.letter << " " << signature_name(r.signature) << ": sampled " << est << " exact " << exact;
  }
  long total = 0;
  for (const auto& [sig, h] : hits) total += h;
  EXPECT_EQ(covered, total) << "samples landed in a signature with no region";
}

TEST(AreaOracle, MembershipMatchesLibrary) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> u(-4000, 4000);
  for (int i = 0; i < 20000; ++i) {
    // Over an odd denominator, q*y - p*x can never be exactly 1/2.
    const long a = u(rng), b = u(rng);
    const Point p{Rational(a, 2001), Rational(b, 2001)};
    ASSERT_EQ(slab_membership(p), signature_at(p.x.get_d(), p.y.get_d())) << a << "/2001, " << b << "/2001";
  }
}
