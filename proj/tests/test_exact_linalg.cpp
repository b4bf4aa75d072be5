#include "pimoduli/smith.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace pimoduli;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Cofactor expansion, independent of the library's Bareiss routine.
Integer det_by_cofactors(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(i - 1, cc++) = m(i, c);
    const Integer term = m(0, j) * det_by_cofactors(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

// Rank by fraction-free elimination over the rationals, kept in integers.
std::size_t rank_by_elimination(IntMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(rank, p);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      const Integer a = m(rank, c), b = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = a * m(i, j) - b * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

// gcd of all k x k minors (the k-th determinantal divisor).
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Integer g = 0;
  std::function<void(std::size_t, std::size_t)> pick_rows, pick_cols;
  pick_cols = [&](std::size_t idx, std::size_t start) {
    if (idx == k) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      g = gcd(g, det_by_cofactors(sub));
      return;
    }
    for (std::size_t c = start; c < m.cols(); ++c) {
      cols[idx] = c;
      pick_cols(idx + 1, c + 1);
    }
  };
  pick_rows = [&](std::size_t idx, std::size_t start) {
    if (idx == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      rows[idx] = r;
      pick_rows(idx + 1, r + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

void expect_snf_contract(const IntMatrix& m) {
  const auto snf = smith_normal_form(m);
  ASSERT_EQ(snf.U * m * snf.V, snf.S) << m;
  ASSERT_TRUE(snf.S.is_diagonal());
  EXPECT_EQ(abs(det_by_cofactors(snf.U)), 1);
  EXPECT_EQ(abs(det_by_cofactors(snf.V)), 1);
  EXPECT_EQ(snf.U * snf.U_inv, IntMatrix::identity(m.rows()));
  const IntVector d = snf.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(d[i], 0);
    if (i + 1 < d.size()) {
      if (d[i] == 0) EXPECT_EQ(d[i + 1], 0) << "zeros must trail";
      else EXPECT_EQ(d[i + 1] % d[i], 0) << "divisibility chain";
    }
  }
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  const auto snf = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(snf.S, IntMatrix::identity(2));
  EXPECT_EQ(snf.U, IntMatrix::identity(2));
  EXPECT_EQ(snf.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, ZeroAndEmpty) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}).S, (IntMatrix{{0}}));
  const auto empty = smith_normal_form(IntMatrix(0, 0));
  EXPECT_EQ(empty.S.rows(), 0u);
  expect_snf_contract(IntMatrix(3, 2));
  expect_snf_contract(IntMatrix(0, 3));
}

TEST(SmithNormalForm, TwoByTwoExample) {
  const IntMatrix m{{2, 4}, {6, 8}};
  expect_snf_contract(m);
  EXPECT_EQ(smith_normal_form(m).S, IntMatrix::diagonal({2, 4}));
  // determinantal divisors: gcd of entries 2, |det| = 8
  EXPECT_EQ(determinantal_divisor(m, 1), 2);
  EXPECT_EQ(determinantal_divisor(m, 2), 8);
}

TEST(SmithNormalForm, RandomContract) {
  std::mt19937 rng(20241);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix m = random_matrix(rng, size(rng), size(rng));
    expect_snf_contract(m);
    EXPECT_EQ(smith_normal_form(m).rank(), rank_by_elimination(m)) << m;
  }
}

TEST(SmithNormalForm, RandomLowRankContract) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    // product of thin factors: rank at most 2, plenty of nontrivial invariant factors
    const IntMatrix m = random_matrix(rng, 5, 2, 4) * random_matrix(rng, 2, 4, 4);
    expect_snf_contract(m);
    EXPECT_EQ(smith_normal_form(m).rank(), rank_by_elimination(m));
  }
}

TEST(SmithNormalForm, DiagonalMatchesDeterminantalDivisors) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = random_matrix(rng, size(rng), size(rng), 6);
    const IntVector d = smith_normal_form(m).diagonal();
    Integer prefix = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prefix *= d[k - 1];
      EXPECT_EQ(prefix, determinantal_divisor(m, k)) << m << " k=" << k;
    }
  }
}

TEST(SmithNormalForm, LargeEntriesStayExact) {
  IntMatrix m{{1, 0}, {0, 1}};
  m(0, 0) = Integer("123456789012345678901234567890");
  m(1, 1) = Integer("987654321098765432109876543210");
  m(0, 1) = Integer("555555555555555555555555555555");
  expect_snf_contract(m);
  const IntVector d = smith_normal_form(m).diagonal();
  EXPECT_EQ(d[0] * d[1], abs(det_by_cofactors(m)));
}

TEST(IntegerKernel, Examples) {
  EXPECT_EQ(integer_kernel(IntMatrix::identity(2)).cols(), 0u);
  EXPECT_EQ(integer_kernel(IntMatrix(1, 2)).cols(), 2u);
  const IntMatrix k = integer_kernel(IntMatrix{{2, -1}});
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k, (IntMatrix{{1}, {2}}));
}

TEST(IntegerKernel, KernelOfTwoMinusOneByEnumeration) {
  // every small solution of 2x - y = 0 is a multiple of the returned primitive vector
  const IntMatrix k = integer_kernel(IntMatrix{{2, -1}});
  EXPECT_EQ(gcd(k(0, 0), k(1, 0)), 1);
  for (int x = -6; x <= 6; ++x)
    for (int y = -6; y <= 6; ++y) {
      if (2 * x - y != 0) continue;
      const LatticeBasis lattice(k);
      EXPECT_TRUE(lattice.contains({x, y}));
    }
}

TEST(IntegerKernel, RandomProperties) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 250; ++trial) {
    const IntMatrix m = trial % 2 ? random_matrix(rng, size(rng), size(rng))
                                  : random_matrix(rng, 3, 2, 3) * random_matrix(rng, 2, size(rng), 3);
    const IntMatrix k = integer_kernel(m);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(k.cols(), m.cols() - rank_by_elimination(m));
    // saturation: the kernel is a direct summand, so its elementary divisors are all 1
    for (const auto& d : smith_normal_form(k).diagonal()) EXPECT_EQ(d, 1);
  }
}

TEST(IntegerKernel, HermiteBasisIsCanonical) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = random_matrix(rng, 2, 5, 5);
    // row operations do not change the kernel
    IntMatrix m2 = m;
    m2.add_row_multiple(0, 1, 3);
    m2.swap_rows(0, 1);
    EXPECT_EQ(integer_kernel(m), integer_kernel(m2));
  }
}

TEST(LatticeBasis, SolveRoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix g = random_matrix(rng, 4, 3, 5);
    const LatticeBasis lattice(g);
    std::uniform_int_distribution<int> c(-4, 4);
    IntVector coeffs{c(rng), c(rng), c(rng)};
    const IntVector x = g * coeffs;
    const auto y = lattice.solve(x);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(lattice.basis() * *y, x);
  }
  const LatticeBasis even(IntMatrix{{2}});
  EXPECT_FALSE(even.contains({3}));
  EXPECT_TRUE(even.contains({-4}));
}
