#include "chordarr/big_count.hpp"

#include <cctype>

#include "chordarr/errors.hpp"

namespace chordarr {

std::string to_decimal(const BigCount& n) { return n.get_str(10); }

BigCount parse_big_count(const std::string& text) {
  if (text.empty()) throw ValidationError("empty integer");
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ValidationError("not a nonnegative decimal integer: '" + text + "'");
    }
  }
  return BigCount(text, 10);
}

std::uint64_t bit_length(const BigCount& n) {
  if (sgn(n) == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::uint64_t log2_lower(const BigCount& n) {
  if (sgn(n) <= 0) throw ValidationError("log2 of a count below 1");
  return bit_length(n) - 1;
}

Rational log2_lower_fixed(const BigCount& n, unsigned frac_bits) {
  const std::uint64_t exponent = log2_lower(n);
  // Mantissa y in [1, 2) held as a fixed-point integer with `prec` bits.
  // Every truncation rounds y down, so each extracted bit is a lower bound.
  const unsigned prec = frac_bits + 64;
  BigCount y;
  if (exponent >= prec) {
    y = n >> static_cast<mp_bitcnt_t>(exponent - prec);
  } else {
    y = n << static_cast<mp_bitcnt_t>(prec - exponent);
  }
  const BigCount two = BigCount(1) << (prec + 1);
  BigCount frac = 0;
  for (unsigned i = 0; i < frac_bits; ++i) {
    y = (y * y) >> prec;
    frac <<= 1;
    if (y >= two) {
      frac += 1;
      y >>= 1;
    }
  }
  Rational result(BigCount(exponent) * (BigCount(1) << frac_bits) + frac,
                  BigCount(1) << frac_bits);
  result.canonicalize();
  return result;
}

std::string decimal_floor(const Rational& q, unsigned digits) {
  BigCount scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  BigCount scaled;
  BigCount num = q.get_num() * scale;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  const bool negative = sgn(scaled) < 0;
  BigCount mag = abs(scaled);
  std::string s = mag.get_str(10);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i >= part.size()) throw ValidationError("malformed rational '" + text + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(part[j]))) {
        throw ValidationError("malformed rational '" + text + "'");
      }
    }
    return BigCount(part[0] == '+' ? part.substr(1) : part, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(text, true));
  BigCount num = parse_int(text.substr(0, slash), true);
  BigCount den = parse_int(text.substr(slash + 1), false);
  if (sgn(den) == 0) throw ValidationError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigCount from_u128(u128 v) {
  BigCount hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  BigCount lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

void CountAccumulator::spill() {
  slow_ += from_u128(fast_);
  fast_ = 0;
}

void CountAccumulator::add_u128(u128 v) {
  u128 next = fast_ + v;
  if (next < fast_) {
    spill();
    next = v;
  }
  fast_ = next;
}

BigCount CountAccumulator::value() const { return slow_ + from_u128(fast_); }

}  // namespace chordarr
