#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace chordarr {

__extension__ using u128 = unsigned __int128;

// Exact nonnegative counts. All counting paths end in one of these.
using BigCount = mpz_class;

// Exact rationals, used for geometry and bound arithmetic.
using Rational = mpq_class;

std::string to_decimal(const BigCount& n);
BigCount parse_big_count(const std::string& text);

// Number of binary digits of n (n >= 1).
std::uint64_t bit_length(const BigCount& n);

// floor(log2 n) as a guaranteed lower bound on log2 n. Throws ValidationError for n < 1.
std::uint64_t log2_lower(const BigCount& n);

// floor(2^frac_bits * log2 n) / 2^frac_bits, a rational lower bound on log2 n.
Rational log2_lower_fixed(const BigCount& n, unsigned frac_bits = 60);

// Decimal string of q truncated toward negative infinity after `digits` places.
std::string decimal_floor(const Rational& q, unsigned digits);

// Parses "p/q", "p" or "-p/q" into a canonical rational.
Rational parse_rational(const std::string& text);

// Accumulates unsigned 64-bit terms exactly, spilling into a BigCount on overflow.
class CountAccumulator {
 public:
  void add(std::uint64_t v) {
    u128 next = fast_ + v;
    if (next < fast_) {
      spill();
      next = v;
    }
    fast_ = next;
  }
  void add(const BigCount& v) { slow_ += v; }
  void merge(const CountAccumulator& other) {
    add(other.slow_);
    add_u128(other.fast_);
  }
  BigCount value() const;

 private:
  void spill();
  void add_u128(u128 v);

  u128 fast_ = 0;
  BigCount slow_ = 0;
};

BigCount from_u128(u128 v);

}  // namespace chordarr
