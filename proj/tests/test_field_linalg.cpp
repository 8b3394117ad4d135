#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "kerpair/submodule.hpp"

using namespace kerpair;

namespace {

// rank over GF(p) from the size of the column span: |span| = p^rank.
std::size_t span_rank(const ScalarMatrix& a, u64 p) {
  const std::size_t n = bf::span(a, p).size();
  std::size_t r = 0;
  for (std::size_t s = 1; s < n; s *= p) ++r;
  return r;
}

}  // namespace

TEST(Rref, IdenticalRows) {
  const PrimeField F(2);
  const RrefResult r = rref(F, {{1, 1}, {1, 1}});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivot_cols, std::vector<std::size_t>{0});
  EXPECT_EQ(r.reduced, (ScalarMatrix{{1, 1}, {0, 0}}));
}

TEST(Rref, Identity) {
  const PrimeField F(5);
  const RrefResult r = rref(F, identity(F, 3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.reduced, identity(F, 3));
}

TEST(Rref, SingularOverGF3) {
  // det = 1 - 4 = -3 = 0 in GF(3): the second row is twice the first.
  const PrimeField F(3);
  const ScalarMatrix a{{1, 2}, {2, 1}};
  EXPECT_EQ(span_rank(a, 3), 1u);
  EXPECT_EQ(rref(F, a).rank, 1u);
}

TEST(Rref, TransformReproducesReduced) {
  const PrimeField F(7);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const ScalarMatrix a = bf::random_matrix(rng, bf::pick(rng, 0, 4), bf::pick(rng, 0, 4), 7);
    const RrefResult r = rref(F, a);
    ASSERT_EQ(multiply(F, r.transform, a), r.reduced);
    auto inv = inverse(F, r.transform);
    ASSERT_TRUE(inv.has_value());
    ASSERT_EQ(multiply(F, r.transform, *inv), identity(F, a.rows()));
  }
}

TEST(Nullspace, Examples) {
  const PrimeField F(2);
  const Submodule full = nullspace(F, zeros(F, 2, 2));
  EXPECT_TRUE(full.is_full());
  EXPECT_EQ(full.rank(), 2u);
  EXPECT_TRUE(nullspace(F, identity(F, 2)).is_zero());
}

TEST(Nullspace, OracleGF3) {
  const PrimeField F(3);
  const ScalarMatrix a{{1, 2, 0}};
  const Submodule k = nullspace(F, a);
  EXPECT_EQ(k.rank(), 2u);
  bf::VecSet expected;
  bf::Vec v(3, 0);
  do {
    if ((v[0] + 2 * v[1]) % 3 == 0) expected.insert(v);
  } while (bf::next(v, 3));
  EXPECT_EQ(bf::span(k.field_basis().basis, 3), expected);
  // Reduced column echelon: pivots 1 at increasing rows.
  EXPECT_EQ(k.field_basis().basis, (ScalarMatrix{{1, 0}, {1, 0}, {0, 1}}));
}

TEST(Nullspace, ZeroDimensionalEdges) {
  const PrimeField F(5);
  EXPECT_TRUE(nullspace(F, ScalarMatrix(0, 3)).is_full());
  EXPECT_EQ(nullspace(F, ScalarMatrix(0, 3)).rank(), 3u);
  EXPECT_EQ(nullspace(F, ScalarMatrix(2, 0)).ambient_dim(), 0u);
  EXPECT_TRUE(nullspace(F, ScalarMatrix(2, 0)).is_zero());
}

TEST(Solve, Examples) {
  const PrimeField F(5);
  EXPECT_EQ(solve(F, identity(F, 3), {1, 2, 3}), (std::vector<u64>{1, 2, 3}));
  EXPECT_FALSE(solve(PrimeField(2), {{1, 0}, {0, 0}}, {0, 1}).has_value());
  EXPECT_EQ(solve(F, {{2}}, {3}), std::vector<u64>{4});
  try {
    solve(F, {{2}}, {3, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Solve, FreeVariablesPinnedToZero) {
  const PrimeField F(3);
  // x0 + x1 + x2 = 2: x1 and x2 are free.
  EXPECT_EQ(solve(F, {{1, 1, 1}}, {2}), (std::vector<u64>{2, 0, 0}));
  EXPECT_EQ(solve(F, {{0, 2, 1}}, {1}), (std::vector<u64>{0, 2, 0}));
}

TEST(Image, Examples) {
  const PrimeField F(2);
  EXPECT_TRUE(image(F, zeros(F, 2, 2)).is_zero());
  EXPECT_TRUE(image(F, identity(F, 2)).is_full());
  const Submodule s = image(F, {{1, 1}, {1, 1}});
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_EQ(s.field_basis().basis, (ScalarMatrix{{1}, {1}}));
  EXPECT_EQ(bf::span(s.field_basis().basis, 2), (bf::VecSet{{0, 0}, {1, 1}}));
}

TEST(SubmoduleEqual, Examples) {
  const PrimeField F(3);
  const Submodule s = image(F, {{1}, {1}});
  EXPECT_TRUE(submodule_equal(s, s));
  EXPECT_FALSE(submodule_equal(Submodule::zero(s.ring(), 2), Submodule::full(s.ring(), 2)));
  EXPECT_TRUE(submodule_equal(s, image(F, {{2}, {2}})));
  EXPECT_EQ(bf::span(ScalarMatrix{{1}, {1}}, 3), bf::span(ScalarMatrix{{2}, {2}}, 3));
  try {
    submodule_equal(s, Submodule::zero(s.ring(), 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbientMismatch);
  }
}

TEST(SubmoduleMember, Examples) {
  const PrimeField F5(5);
  const Submodule s = image(F5, {{1}, {2}});
  EXPECT_EQ(submodule_member(s, std::vector<u64>{0, 0}), std::vector<u64>{0});
  EXPECT_FALSE(submodule_member(image(F5, {{0}, {1}}), std::vector<u64>{1, 0}).has_value());
  // The multiples of (1,2) over GF(5) are (0,0) (1,2) (2,4) (3,1) (4,3).
  EXPECT_FALSE(submodule_member(s, std::vector<u64>{2, 1}).has_value());
  EXPECT_EQ(submodule_member(s, std::vector<u64>{3, 1}), std::vector<u64>{3});
  const bf::VecSet multiples = bf::span(ScalarMatrix{{1}, {2}}, 5);
  EXPECT_FALSE(multiples.count({2, 1}));
  EXPECT_TRUE(multiples.count({3, 1}));
}

TEST(Properties, RankNullity) {
  std::mt19937_64 rng(2);
  for (u64 p : {2u, 3u, 5u, 7u}) {
    const PrimeField F(p);
    for (int t = 0; t < 500; ++t) {
      const std::size_t rows = bf::pick(rng, 0, 5), cols = bf::pick(rng, 0, 5);
      const ScalarMatrix a = bf::random_matrix(rng, rows, cols, p);
      ASSERT_EQ(nullspace(F, a).rank() + rank(F, a), cols);
      ASSERT_TRUE(is_zero(F, multiply(F, a, nullspace_basis(F, a))));
    }
  }
}

TEST(Properties, RankMatchesSpanOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const u64 p = t % 2 ? 2 : 3;
    const ScalarMatrix a = bf::random_matrix(rng, bf::pick(rng, 1, 3), bf::pick(rng, 1, 3), p);
    ASSERT_EQ(rank(PrimeField(p), a), span_rank(a, p));
  }
}

TEST(Properties, ImageContainsColumnsAndSolveAgreesWithMembership) {
  std::mt19937_64 rng(4);
  const PrimeField F(5);
  for (int t = 0; t < 500; ++t) {
    const ScalarMatrix a = bf::random_matrix(rng, bf::pick(rng, 1, 4), bf::pick(rng, 0, 4), 5);
    const Submodule im = image(F, a);
    for (std::size_t j = 0; j < a.cols(); ++j) ASSERT_TRUE(submodule_member(im, a.col(j)).has_value());
    const ScalarMatrix b = bf::random_matrix(rng, a.rows(), 1, 5);
    const auto x = solve(F, a, b.col(0));
    ASSERT_EQ(x.has_value(), submodule_member(im, b.col(0)).has_value());
    if (x) ASSERT_EQ(apply(F, a, *x), b.col(0));
  }
}

TEST(Properties, EqualityIsAnEquivalence) {
  std::mt19937_64 rng(5);
  const PrimeField F(2);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = bf::pick(rng, 1, 3);
    const Submodule s = image(F, bf::random_matrix(rng, n, bf::pick(rng, 0, 3), 2));
    const Submodule u = image(F, bf::random_matrix(rng, n, bf::pick(rng, 0, 3), 2));
    const Submodule v = image(F, bf::random_matrix(rng, n, bf::pick(rng, 0, 3), 2));
    ASSERT_TRUE(submodule_equal(s, s));
    ASSERT_EQ(submodule_equal(s, u), submodule_equal(u, s));
    if (submodule_equal(s, u) && submodule_equal(u, v)) ASSERT_TRUE(submodule_equal(s, v));
    // Structural equality is set equality.
    ASSERT_EQ(submodule_equal(s, u), bf::span(s.field_basis().basis, 2) == bf::span(u.field_basis().basis, 2));
  }
}
