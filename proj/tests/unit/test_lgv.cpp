#include <gtest/gtest.h>

#include "chordarr/counter.hpp"
#include "chordarr/errors.hpp"
#include "chordarr/lgv.hpp"

using namespace chordarr;

TEST(Lgv, SmallMatrices) {
  const LgvMatrix m1 = lgv_matrix(1);
  ASSERT_EQ(m1.dim, 1);
  EXPECT_EQ(m1.at(0, 0), 2);

  const LgvMatrix m2 = lgv_matrix(2);
  ASSERT_EQ(m2.dim, 3);
  const std::vector<BigCount> want = {2, 1, 0, 1, 6, 1, 0, 1, 2};
  EXPECT_EQ(m2.entries, want);
  EXPECT_THROW(lgv_matrix(0), ValidationError);
}

TEST(Lgv, MatrixIsSymmetricAndBanded) {
  for (int s = 1; s <= 20; ++s) {
    const LgvMatrix m = lgv_matrix(s);
    ASSERT_EQ(m.dim, 2 * s - 1);
    for (int i = 0; i < m.dim; ++i) {
      for (int j = 0; j < m.dim; ++j) {
        EXPECT_EQ(m.at(i, j), m.at(j, i));
        EXPECT_GE(m.at(i, j), 0);
      }
    }
    // The binomial index outgrows the top once the offset is large enough.
    if (s >= 3) EXPECT_EQ(m.at(0, m.dim - 1), 0) << s;
  }
}

TEST(Lgv, KnownValues) {
  EXPECT_EQ(lgv_count(1), 2);
  EXPECT_EQ(lgv_count(2), 20);
}

TEST(Lgv, StrictlyIncreasing) {
  BigCount prev = 1;
  for (int s = 1; s <= 30; ++s) {
    const BigCount v = lgv_count(s);
    EXPECT_GT(v, prev) << s;
    prev = v;
  }
}

TEST(Lgv, DeterminantOfSingularAndDiagonal) {
  LgvMatrix z{2, {1, 2, 2, 4}};
  EXPECT_EQ(determinant(z), 0);
  LgvMatrix d{3, {2, 0, 0, 0, 3, 0, 0, 0, 5}};
  EXPECT_EQ(determinant(d), 30);
  // Needs a row swap.
  LgvMatrix p{2, {0, 1, 1, 0}};
  EXPECT_EQ(determinant(p), -1);
  EXPECT_EQ(determinant(LgvMatrix{}), 1);
}

TEST(Lgv, GridWindowShape) {
  for (int s : {1, 3, 7, 11}) {
    const Matching m = grid_window_matching(s);
    EXPECT_EQ(m.size(), 4 * s - 1) << s;
  }
  EXPECT_THROW(grid_window_matching(0), ValidationError);
}

TEST(Lgv, EqualsDirectCount) {
  for (int s = 1; s <= 3; ++s) {
    CountOptions o;
    o.threads = 2;
    EXPECT_EQ(lgv_count(s), count_arrangements(grid_window_matching(s), o)) << s;
  }
}
