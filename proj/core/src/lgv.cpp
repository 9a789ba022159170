#include "chordarr/lgv.hpp"

#include <cstdlib>

#include "chordarr/construction.hpp"
#include "chordarr/errors.hpp"

namespace chordarr {

namespace {

BigCount binomial(long n, long t) {
  if (t < 0 || t > n) return 0;
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t));
  return r;
}

}  // namespace

LgvMatrix lgv_matrix(int s) {
  if (s < 1) throw ValidationError("window size must be at least 1");
  const int n = 2 * s - 1;
  LgvMatrix m{n, std::vector<BigCount>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n))};
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const long top = 2L * s - std::abs(s - i) - std::abs(s - j);
      const long twice = top + 3L * std::abs(i - j);
      if (twice % 2 != 0) throw InvariantViolation("odd binomial index at (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
      m.at(i - 1, j - 1) = binomial(top, twice / 2);
    }
  }
  return m;
}

BigCount determinant(LgvMatrix m) {
  const int n = m.dim;
  if (n == 0) return 1;
  // Row r is stored as of elimination step level[r]; its true value at step k
  // is stored * pivot[k] / pivot[level[r]] as long as its pivot-column entries
  // stayed zero in between.
  std::vector<int> level(static_cast<std::size_t>(n), 0);
  std::vector<BigCount> pivot(static_cast<std::size_t>(n) + 1);
  pivot[0] = 1;
  auto refresh = [&](int r, int k) {
    const int from = level[static_cast<std::size_t>(r)];
    if (from == k) return;
    for (int j = 0; j < n; ++j) {
      BigCount& v = m.at(r, j);
      if (v == 0) continue;
      v *= pivot[static_cast<std::size_t>(k)];
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pivot[static_cast<std::size_t>(from)].get_mpz_t());
    }
    level[static_cast<std::size_t>(r)] = k;
  };
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int r = k + 1; r < n && swap < 0; ++r) {
        if (m.at(r, k) != 0) swap = r;
      }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      std::swap(level[static_cast<std::size_t>(k)], level[static_cast<std::size_t>(swap)]);
      negate = !negate;
    }
    refresh(k, k);
    const BigCount& p = m.at(k, k);
    const BigCount& prev = pivot[static_cast<std::size_t>(k)];
    for (int r = k + 1; r < n; ++r) {
      if (m.at(r, k) == 0) continue;
      refresh(r, k);
      const BigCount f = m.at(r, k);
      for (int j = k + 1; j < n; ++j) {
        BigCount& v = m.at(r, j);
        v *= p;
        if (m.at(k, j) != 0) v -= f * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(r, k) = 0;
      level[static_cast<std::size_t>(r)] = k + 1;
    }
    pivot[static_cast<std::size_t>(k) + 1] = p;
  }
  BigCount det = pivot[static_cast<std::size_t>(n)];
  return negate ? BigCount(-det) : det;
}

BigCount lgv_count(int s) { return determinant(lgv_matrix(s)); }

Matching grid_window_matching(int s) {
  if (s < 1) throw ValidationError("window size must be at least 1");
  std::vector<Line> lines;
  for (int j = 1; j <= s; ++j) lines.push_back(Line::sloped(0, j));
  for (int j = 1; j <= s; ++j) lines.push_back(Line::vertical(j));
  for (int j = 2; j <= 2 * s; ++j) lines.push_back(Line::sloped(-1, j));
  // The exact window has lines through its corners; any small diagonal nudge
  // resolves them the same way.
  const Rational nudge(1, 8);
  const Rational mid = Rational(s + 1, 2) + nudge;
  return extract_window_matching(lines, Window{{mid, mid}, Rational(s), std::nullopt});
}

}  // namespace chordarr
