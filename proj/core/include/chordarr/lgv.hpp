#pragma once

#include <cstdint>
#include <vector>

#include "chordarr/big_count.hpp"
#include "chordarr/matching.hpp"

namespace chordarr {

// Square matrix of path counts, row-major.
struct LgvMatrix {
  int dim = 0;
  std::vector<BigCount> entries;

  const BigCount& at(int i, int j) const { return entries[static_cast<std::size_t>(i * dim + j)]; }
  BigCount& at(int i, int j) { return entries[static_cast<std::size_t>(i * dim + j)]; }
};

// (2s-1) x (2s-1) matrix with 1-based entries
//   m_ij = C(2s - |s-i| - |s-j|, (2s - |s-i| - |s-j| + 3|i-j|) / 2),
// C(n, t) = 0 outside 0 <= t <= n. Throws ValidationError for s < 1 and
// InvariantViolation if the halved expression is ever odd.
LgvMatrix lgv_matrix(int s);

// Fraction-free elimination; rows are only brought up to date once they hold
// a nonzero entry in the pivot column, which skips most work on banded input.
BigCount determinant(LgvMatrix m);

// Number of arrangements of the s x s sheared-grid window.
BigCount lgv_count(int s);

// Window [1/2, s + 1/2]^2 (nudged off the lattice) of the grid x, y in
// {1..s} with the slope -1 lines x + y in {2..2s}: s + s + 2s - 1 chords.
Matching grid_window_matching(int s);

}  // namespace chordarr
