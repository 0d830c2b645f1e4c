#include <gtest/gtest.h>

#include <random>

#include "diffmod/exactla.hpp"
#include "diffmod/extfield.hpp"

using namespace diffmod;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<long long>> rows, Scalar p) {
  std::vector<std::vector<long long>> r;
  for (auto row : rows) r.emplace_back(row);
  return Matrix::from_rows(r, p);
}

Matrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c, Scalar p, double zero_bias = 0.4) {
  Matrix m(r, c, p);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(gen) > zero_bias) m.set(i, j, static_cast<Scalar>(gen() % p));
  return m;
}

// All row vectors of length n over F_p.
std::vector<std::vector<Scalar>> all_vectors(std::size_t n, Scalar p) {
  std::vector<std::vector<Scalar>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& v : out)
      for (Scalar x = 0; x < p; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = next;
  }
  return out;
}

}  // namespace

TEST(Field, ArithmeticAndInverses) {
  for (Scalar p : {2u, 3u, 5u, 7u, 101u}) {
    for (Scalar a = 1; a < std::min<Scalar>(p, 30); ++a) EXPECT_EQ(fp::mul(a, fp::inv(a, p), p), 1u);
    EXPECT_EQ(fp::reduce(-1, p), p - 1);
  }
  EXPECT_FALSE(fp::is_prime(1));
  EXPECT_FALSE(fp::is_prime(9));
  EXPECT_TRUE(fp::is_prime(65521));
}

TEST(Matrix, RejectsCompositeModulus) {
  try {
    Matrix m(2, 2, 4);
    FAIL() << "accepted p = 4";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
}

TEST(Matrix, EntriesAreReduced) {
  auto m = mat({{-1, 5}, {7, 3}}, 3);
  EXPECT_EQ(m(0, 0), 2u);
  EXPECT_EQ(m(0, 1), 2u);
  EXPECT_EQ(m(1, 0), 1u);
  EXPECT_EQ(m(1, 1), 0u);
}

TEST(Rref, IdentityOverF2) {
  auto r = rref(Matrix::identity(2, 2));
  EXPECT_EQ(r.reduced, Matrix::identity(2, 2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, RankOneOverF2) {
  auto r = rref(mat({{1, 1}, {1, 1}}, 2));
  EXPECT_EQ(r.reduced, mat({{1, 1}, {0, 0}}, 2));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, AlreadyEchelonOverF3) {
  auto r = rref(mat({{0, 1}, {0, 0}}, 3));
  EXPECT_EQ(r.reduced, mat({{0, 1}, {0, 0}}, 3));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{1}));
}

TEST(Rref, EmptyMatrices) {
  EXPECT_EQ(rref(Matrix(0, 3, 5)).rank, 0u);
  EXPECT_EQ(rref(Matrix(3, 0, 5)).rank, 0u);
  EXPECT_EQ(kernel_basis(Matrix(3, 0, 5)).rows(), 3u);
  EXPECT_EQ(kernel_basis(Matrix(0, 3, 5)).rows(), 0u);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(2, 2)).rows(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(2, 2, 2)), Matrix::identity(2, 2));
  EXPECT_EQ(kernel_basis(mat({{0, 1}, {0, 0}}, 2)), mat({{0, 1}}, 2));
}

TEST(Kernel, MatchesBruteForceEnumeration) {
  std::mt19937_64 gen(7);
  for (Scalar p : {2u, 3u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + gen() % 4, c = 1 + gen() % 4;
      Matrix m = random_matrix(gen, r, c, p);
      Matrix k = kernel_basis(m);
      std::size_t count = 0;
      for (const auto& v : all_vectors(r, p))
        if (product(row_vector(v, p), m).is_zero()) ++count;
      std::size_t expect = 1;
      for (std::size_t i = 0; i < k.rows(); ++i) expect *= p;
      EXPECT_EQ(count, expect);
      EXPECT_TRUE(product(k, m).is_zero());
      EXPECT_EQ(rank(k), k.rows());
    }
  }
}

TEST(Solve, Examples) {
  auto b = mat({{1, 0}, {1, 1}}, 2);
  EXPECT_EQ(*solve_through(Matrix::identity(2, 2), b), b);
  EXPECT_EQ(*solve_through(mat({{0, 1}, {0, 0}}, 2), Matrix(2, 2, 2)), Matrix(2, 2, 2));
  EXPECT_EQ(*solve_through(mat({{1, 0}}, 2), mat({{1, 0}}, 2)), mat({{1}}, 2));
  EXPECT_FALSE(solve_through(mat({{1, 0}}, 2), mat({{0, 1}}, 2)).has_value());
}

TEST(Solve, CanonicalSolutionHasZeroFreeCoordinates) {
  // a has a repeated row: the second coordinate of x is free and must be 0.
  auto a = mat({{1, 2}, {1, 2}, {0, 1}}, 5);
  auto x = solve_through(a, mat({{3, 1}}, 5));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(product(*x, a), mat({{3, 1}}, 5));
  EXPECT_EQ((*x)(0, 1), 0u);
}

TEST(Blocks, AssemblyAndSquareZero) {
  auto one = Matrix::identity(1, 2);
  EXPECT_EQ(block_diag({one, one}), Matrix::identity(2, 2));
  auto m = mat({{1, 2, 0}, {0, 1, 1}}, 3);
  EXPECT_EQ(product(Matrix::identity(2, 3), m), m);
  auto delta = mat({{0, 0}, {1, 0}}, 2);
  EXPECT_TRUE(product(delta, delta).is_zero());
  EXPECT_EQ(hstack({one, Matrix(1, 0, 2), one}), mat({{1, 1}}, 2));
  EXPECT_EQ(vstack({one, one}), mat({{1}, {1}}, 2));
  EXPECT_EQ(blocks2x2(one, Matrix(1, 1, 2), Matrix(1, 1, 2), one), Matrix::identity(2, 2));
}

TEST(Blocks, DimensionMismatchIsAnError) {
  EXPECT_THROW(product(Matrix(2, 3, 2), Matrix(2, 3, 2)), Error);
  EXPECT_THROW(hstack({Matrix(1, 1, 2), Matrix(2, 1, 2)}), Error);
  EXPECT_THROW(product(Matrix(1, 1, 2), Matrix(1, 1, 3)), Error);
}

TEST(Properties, RandomizedInvariants) {
  std::mt19937_64 gen(2024);
  for (Scalar p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = gen() % 7, c = gen() % 7, d = 1 + gen() % 5;
      Matrix m = random_matrix(gen, r, c, p);
      auto red = rref(m);
      EXPECT_EQ(rref(red.reduced).reduced, red.reduced);
      EXPECT_EQ(rank(m), rank(transpose(m)));
      EXPECT_EQ(kernel_basis(m).rows() + rank(m), r);
      EXPECT_TRUE(product(m, transpose(null_space(m))).is_zero());
      EXPECT_EQ(rank(vstack({m, red.reduced})), red.rank);

      Matrix x0 = random_matrix(gen, d, r, p);
      Matrix b = product(x0, m);
      auto x = solve_through(m, b);
      ASSERT_TRUE(x.has_value());
      EXPECT_EQ(product(*x, m), b);

      Matrix n = random_matrix(gen, c, d, p), q = random_matrix(gen, d, 3, p);
      EXPECT_EQ(product(product(m, n), q), product(m, product(n, q)));
    }
  }
}

TEST(Properties, InverseOfRandomInvertible) {
  std::mt19937_64 gen(99);
  int found = 0;
  for (int trial = 0; trial < 200 && found < 30; ++trial) {
    Matrix m = random_matrix(gen, 4, 4, 3, 0.2);
    auto inv = inverse(m);
    if (rank(m) < 4) {
      EXPECT_FALSE(inv.has_value());
      continue;
    }
    ++found;
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(product(*inv, m), Matrix::identity(4, 3));
  }
  EXPECT_GT(found, 0);
}

TEST(ExtensionField, FieldAxiomsOnRandomElements) {
  std::mt19937_64 gen(5);
  for (Scalar p : {2u, 3u, 65521u}) {
    ExtensionField f(p);
    EXPECT_TRUE(fp::is_prime(static_cast<Scalar>(f.degree())));
    for (int t = 0; t < 20; ++t) {
      auto a = f.random(gen), b = f.random(gen), c = f.random(gen);
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      if (!ExtensionField::is_zero(a)) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
    }
  }
}

TEST(ExtensionField, NonsingularityMatchesPrimeFieldRank) {
  std::mt19937_64 gen(6);
  ExtensionField f(3);
  for (int t = 0; t < 40; ++t) {
    Matrix m = random_matrix(gen, 4, 4, 3, 0.5);
    std::vector<std::vector<ExtensionField::Elem>> e(4, std::vector<ExtensionField::Elem>(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) e[i][j] = f.embed(m(i, j));
    EXPECT_EQ(f.nonsingular(e), rank(m) == 4);
  }
}
