#include <gtest/gtest.h>

#include <random>

#include "lpr/dense_solve.hpp"
#include "lpr/errors.hpp"

using namespace lpr;

TEST(DenseSolve, SolvesSmallSystem) {
  DenseMatrix m(3);
  const double a[9] = {2, 1, -1, -3, -1, 2, -2, 1, 2};
  std::copy(a, a + 9, m.a.begin());
  const std::vector<double> b = {8, -11, -3};
  const auto x = solve_pivoted(m, b);
  EXPECT_NEAR(x[0], 2.0, 1e-14);
  EXPECT_NEAR(x[1], 3.0, 1e-14);
  EXPECT_NEAR(x[2], -1.0, 1e-14);
}

TEST(DenseSolve, NeedsPivoting) {
  DenseMatrix m(2);
  m(0, 0) = 0.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 1.0;
  const std::vector<double> b = {2.0, 3.0};
  const auto x = solve_pivoted(m, b);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(DenseSolve, SingularRaises) {
  DenseMatrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 2.0;
  m(1, 1) = 4.0;
  const std::vector<double> b = {1.0, 2.0};
  EXPECT_THROW(solve_pivoted(m, b), SingularSystem);
}

TEST(DenseSolve, ResidualSmallOnRandomSystems) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 10; ++n) {
    DenseMatrix m(n);
    for (double& v : m.a) v = u(rng);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 2.0 * static_cast<double>(n);
    std::vector<double> b(n);
    for (double& v : b) v = u(rng);
    const auto x = solve_pivoted(m, b);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += m(r, c) * x[c];
      EXPECT_NEAR(s, b[r], 1e-12);
    }
  }
}
