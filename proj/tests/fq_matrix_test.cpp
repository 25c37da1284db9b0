#include <gtest/gtest.h>

#include <random>

#include "eigencount/fq_matrix.hpp"

namespace ec = eigencount;
using ec::FqMatrix;
using ec::PrimeField;

TEST(PrimeField, RejectsCompositeAndOutOfRange) {
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(257));
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(9), std::invalid_argument);
  EXPECT_THROW(PrimeField(263), std::invalid_argument);
}

TEST(PrimeField, Inverses) {
  for (unsigned p : {2u, 3u, 5u, 7u, 13u, 257u}) {
    PrimeField f(p);
    for (unsigned a = 1; a < p; ++a) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_THROW(f.inv(0), std::domain_error);
  }
}

TEST(FqMatrix, IdentityIsNeutral) {
  PrimeField f(5);
  FqMatrix a(f, {{1, 2, 3}, {4, 0, 1}, {2, 2, 2}});
  EXPECT_EQ(ec::mat_mul(FqMatrix::identity(3, f), a), a);
  EXPECT_EQ(ec::mat_mul(a, FqMatrix::identity(3, f)), a);
}

TEST(FqMatrix, TransvectionSquaresToIdentityInCharTwo) {
  PrimeField f(2);
  FqMatrix t(f, {{1, 1}, {0, 1}});
  EXPECT_EQ(ec::mat_mul(t, t), FqMatrix::identity(2, f));
}

TEST(FqMatrix, HandProductModThree) {
  PrimeField f(3);
  FqMatrix a(f, {{0, 1}, {2, 0}});
  EXPECT_EQ(ec::mat_mul(a, a), (FqMatrix(f, {{2, 0}, {0, 2}})));
}

TEST(FqMatrix, DimensionMismatch) {
  PrimeField f(3);
  EXPECT_THROW(ec::mat_mul(FqMatrix(2, f), FqMatrix(3, f)), ec::DimensionMismatch);
  EXPECT_THROW(ec::mat_mul(FqMatrix(2, f), FqMatrix(2, PrimeField(5))), ec::DimensionMismatch);
}

TEST(FqMatrix, Rank) {
  for (unsigned p : {2u, 3u, 7u}) {
    PrimeField f(p);
    EXPECT_EQ(ec::mat_rank(FqMatrix(3, f)), 0u);
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(ec::mat_rank(FqMatrix::identity(n, f)), n);
  }
  EXPECT_EQ(ec::mat_rank(FqMatrix(PrimeField(5), {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(ec::mat_rank(FqMatrix(PrimeField(7), {{0, 0, 1}, {0, 1, 0}, {0, 1, 1}})), 2u);
}

TEST(FqMatrix, Powers) {
  PrimeField f(5);
  FqMatrix a(f, {{1, 2}, {3, 4}});
  EXPECT_EQ(ec::mat_pow(a, 0), FqMatrix::identity(2, f));
  EXPECT_EQ(ec::mat_pow(FqMatrix(f, {{0, 1}, {0, 0}}), 2), FqMatrix(2, f));

  PrimeField f2(2);
  FqMatrix fib(f2, {{0, 1}, {1, 1}});
  // fib^2 = [[1,1],[1,0]], fib^3 = I over F_2
  EXPECT_EQ(ec::mat_pow(fib, 2), (FqMatrix(f2, {{1, 1}, {1, 0}})));
  EXPECT_EQ(ec::mat_pow(fib, 3), FqMatrix::identity(2, f2));
}

TEST(FqMatrixProperty, PowMatchesRepeatedProduct) {
  std::mt19937 rng(3);
  PrimeField f(7);
  for (int trial = 0; trial < 50; ++trial) {
    FqMatrix a = FqMatrix::from_index(3, f, rng() % 40353607u);
    FqMatrix acc = FqMatrix::identity(3, f);
    for (unsigned e = 0; e <= 9; ++e) {
      ASSERT_EQ(ec::mat_pow(a, e), acc);
      acc = ec::mat_mul(acc, a);
    }
  }
}

TEST(FqMatrixProperty, InverseOfFullRank) {
  std::mt19937 rng(11);
  PrimeField f(5);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    FqMatrix a = FqMatrix::from_index(3, f, rng() % 1953125u);
    if (ec::mat_rank(a) < 3) {
      EXPECT_THROW(ec::mat_inverse(a), std::domain_error);
      continue;
    }
    ++tested;
    ASSERT_EQ(ec::mat_mul(a, ec::mat_inverse(a)), FqMatrix::identity(3, f));
  }
  EXPECT_GT(tested, 100);
}

TEST(FqMatrix, IndexRoundTrip) {
  PrimeField f(3);
  for (std::uint64_t i = 0; i < 81; ++i) EXPECT_EQ(FqMatrix::from_index(2, f, i).to_index(), i);
}
