#include <cmath>

#include <gtest/gtest.h>

#include "chordarr/big_count.hpp"
#include "chordarr/errors.hpp"

using namespace chordarr;

TEST(BigCount, DecimalRoundTrip) {
  const std::string big = "17876503929228145018796772391568838912";
  EXPECT_EQ(to_decimal(parse_big_count(big)), big);
  EXPECT_THROW(parse_big_count("12x"), ValidationError);
  EXPECT_THROW(parse_big_count(""), ValidationError);
}

TEST(BigCount, BitLengthAndFloorLog) {
  EXPECT_EQ(log2_lower(BigCount(20)), 4u);
  EXPECT_EQ(log2_lower(BigCount(1)), 0u);
  EXPECT_EQ(log2_lower(BigCount(1) << 50), 50u);
  EXPECT_EQ(bit_length(BigCount(20)), 5u);
  EXPECT_THROW(log2_lower(BigCount(0)), ValidationError);
}

TEST(BigCount, FixedLogIsTightLowerBound) {
  for (unsigned long n : {2ul, 3ul, 20ul, 1000ul, 123456789ul, 4294967297ul}) {
    const Rational l = log2_lower_fixed(BigCount(n), 60);
    const long double exact = std::log2(static_cast<long double>(n));
    EXPECT_LE(l.get_d(), static_cast<double>(exact) + 1e-15) << n;
    EXPECT_GE(l.get_d(), static_cast<double>(exact) - 1e-12) << n;
  }
  // Powers of two are exact.
  EXPECT_EQ(log2_lower_fixed(BigCount(1) << 77, 60), Rational(77));
}

TEST(BigCount, DecimalFloorRoundsDown) {
  EXPECT_EQ(decimal_floor(Rational(1, 3), 3), "0.333");
  EXPECT_EQ(decimal_floor(Rational(2, 3), 3), "0.666");
  EXPECT_EQ(decimal_floor(Rational(-1, 3), 2), "-0.34");
  EXPECT_EQ(decimal_floor(Rational(5), 2), "5.00");
}

TEST(BigCount, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
  EXPECT_THROW(parse_rational("a/b"), ValidationError);
}

TEST(BigCount, AccumulatorSpillsExactly) {
  CountAccumulator acc;
  const std::uint64_t big = ~std::uint64_t{0};
  for (int i = 0; i < 1000; ++i) acc.add(big);
  acc.add(BigCount(5));
  BigCount want = BigCount(static_cast<unsigned long>(big)) * 1000 + 5;
  EXPECT_EQ(acc.value(), want);

  CountAccumulator other;
  other.add(big);
  acc.merge(other);
  want += static_cast<unsigned long>(big);
  EXPECT_EQ(acc.value(), want);
}
