#include "coulomb/integer_linalg.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace coulomb;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

oracle::Mat to_oracle(const IntMatrix& m) {
  oracle::Mat o(m.rows(), std::vector<oracle::Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) o[i][j] = m(i, j);
  return o;
}

}  // namespace

TEST(IntegerLinalg, SmithMatchesDeterminantalDivisors) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m = random_matrix(rng, r, c, -6, 6);
    std::vector<oracle::Int> want = oracle::invariant_factors(to_oracle(m));
    auto got = smith_invariant_factors(m);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial;
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(to_int(got[i]), want[i]) << "trial " << trial;
  }
}

TEST(IntegerLinalg, SmithKnownCases) {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 3;
  auto f = smith_invariant_factors(m);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], 1);
  EXPECT_EQ(f[1], 6);
  EXPECT_TRUE(smith_invariant_factors(IntMatrix(3, 2)).empty());
}

TEST(IntegerLinalg, SolveAgreesWithBruteForce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    IntMatrix a = random_matrix(rng, 2, 3, -3, 3);
    Vec b = {std::uniform_int_distribution<int>(-5, 5)(rng), std::uniform_int_distribution<int>(-5, 5)(rng)};
    // brute force over a box; only a positive finding is conclusive
    bool brute = false;
    for (int x = -12; x <= 12 && !brute; ++x)
      for (int y = -12; y <= 12 && !brute; ++y)
        for (int z = -12; z <= 12 && !brute; ++z)
          if (a(0, 0) * x + a(0, 1) * y + a(0, 2) * z == b[0] && a(1, 0) * x + a(1, 1) * y + a(1, 2) * z == b[1])
            brute = true;
    auto sol = solve_integer(to_big(a), {b[0], b[1]});
    if (brute) ASSERT_TRUE(sol.has_value()) << "trial " << trial;
    if (sol) {
      Vec x = {to_int((*sol)[0]), to_int((*sol)[1]), to_int((*sol)[2])};
      EXPECT_EQ(a * x, b);
    }
  }
}

TEST(IntegerLinalg, SolveDetectsNonIntegralSystem) {
  IntMatrix a(1, 2);
  a(0, 0) = 2;
  a(0, 1) = 4;
  EXPECT_FALSE(solve_integer(to_big(a), {3}).has_value());
  EXPECT_TRUE(solve_integer(to_big(a), {6}).has_value());
}

TEST(IntegerLinalg, KernelIsSaturatedAndAnnihilated) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix a = random_matrix(rng, 2, 4, -4, 4);
    IntMatrix k = integer_kernel(a);
    IntMatrix prod = a * k;
    for (auto x : prod.data()) EXPECT_EQ(x, 0);
    // saturated: elementary divisors of the kernel basis are all 1
    for (const auto& f : smith_invariant_factors(k)) EXPECT_EQ(f, 1);
  }
}

TEST(IntegerLinalg, LatticeBasisSpansGenerators) {
  IntMatrix g(2, 3);
  g(0, 0) = 2; g(1, 0) = 0;
  g(0, 1) = 0; g(1, 1) = 2;
  g(0, 2) = 1; g(1, 2) = 1;
  IntMatrix b = lattice_basis(g);
  EXPECT_EQ(b.cols(), 2u);
  EXPECT_EQ(std::abs(oracle::det(to_oracle(b))), 2);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(lattice_contains(b, g.column(j)));
  EXPECT_FALSE(lattice_contains(b, {1, 0}));
}

TEST(IntegerLinalg, RationalInverse) {
  RatMatrix m(2, 2);
  m(0, 0) = 1; m(0, 1) = 2;
  m(1, 0) = 3; m(1, 1) = 4;
  RatMatrix p = m * inverse(m);
  EXPECT_TRUE(p == RatMatrix::identity(2));
  EXPECT_THROW(inverse(RatMatrix(2, 2)), std::domain_error);
}
