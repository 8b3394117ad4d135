#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "kerpair/kernel_pair.hpp"

using namespace kerpair;

namespace {

bf::VecSet elements(const Submodule& s) {
  const auto all = enumerate_elements(s);
  return {all.begin(), all.end()};
}

}  // namespace

TEST(Projection, WorkedExampleGF2) {
  const PrimeField F(2);
  const ScalarMatrix a{{1, 0}, {0, 0}}, b{{1}, {1}};
  auto [r, w] = kernel_pair_projection(F, a, b);
  EXPECT_EQ(r.ker_f1, image(F, {{0}, {1}}));
  EXPECT_EQ(r.ker_pair.rank(), 1u);
  EXPECT_TRUE(r.ker_bar.is_zero());
  EXPECT_EQ(bf::kernel_pair(a, b, 2), (bf::VecSet{{0}}));
  EXPECT_EQ(w.section.cols(), 0u);
  EXPECT_EQ(w.inclusion, (ScalarMatrix{{1, 0}, {0, 1}, {0, 0}}));
  EXPECT_EQ(w.projection, (ScalarMatrix{{0, 0, 1}}));
}

TEST(Projection, DegenerateInputs) {
  const PrimeField F(3);
  const ScalarMatrix a{{1, 2}, {0, 1}};
  EXPECT_TRUE(kernel_pair_projection(F, a, zeros(F, 2, 3)).first.ker_bar.is_full());
  EXPECT_TRUE(kernel_pair_projection(F, zeros(F, 2, 2), identity(F, 2)).first.ker_bar.is_zero());
  // Empty first map: ker(0|B) = ker B.
  const ScalarMatrix b{{1, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(kernel_pair_projection(F, ScalarMatrix(2, 0), b).first.ker_bar, nullspace(F, b));
}

TEST(Preimage, Examples) {
  const PrimeField F(3);
  EXPECT_TRUE(kernel_pair_preimage(F, {{1, 0}, {0, 1}}, {{2}, {1}}).ker_bar.is_full());
  // Im B = span{(1,1)} lies in Im A = span{(1,1)}.
  EXPECT_TRUE(kernel_pair_preimage(F, {{1}, {1}}, {{2}, {2}}).ker_bar.is_full());
  const ScalarMatrix a{{1}, {0}}, b{{0}, {1}};
  EXPECT_TRUE(kernel_pair_preimage(F, a, b).ker_bar.is_zero());
  EXPECT_EQ(bf::kernel_pair(a, b, 3), (bf::VecSet{{0}}));
}

TEST(Quotient, Examples) {
  const PrimeField F(2);
  auto [full, c_full] = kernel_pair_quotient(F, {{1, 1}, {0, 1}}, {{1}, {1}});
  EXPECT_EQ(c_full.matrix.rows(), 0u);
  EXPECT_TRUE(full.ker_bar.is_full());

  const ScalarMatrix b{{1, 0, 1}, {0, 1, 1}};
  auto [zero_a, c_id] = kernel_pair_quotient(F, zeros(F, 2, 2), b);
  EXPECT_EQ(c_id.matrix, identity(F, 2));
  EXPECT_EQ(zero_a.ker_bar, nullspace(F, b));

  const ScalarMatrix a{{1, 0}, {0, 0}}, b1{{1}, {1}};
  auto [r, c] = kernel_pair_quotient(F, a, b1);
  EXPECT_EQ(c.matrix, (ScalarMatrix{{0, 1}}));
  EXPECT_EQ(multiply(F, c.matrix, b1), (ScalarMatrix{{1}}));
  EXPECT_TRUE(r.ker_bar.is_zero());
}

TEST(Quotient, MapAnnihilatesImage) {
  std::mt19937_64 rng(21);
  const PrimeField F(5);
  for (int t = 0; t < 200; ++t) {
    const ScalarMatrix a = bf::random_matrix(rng, bf::pick(rng, 0, 4), bf::pick(rng, 0, 4), 5);
    const ScalarMatrix c = quotient_map(F, a).matrix;
    ASSERT_TRUE(is_zero(F, multiply(F, c, a)));
    ASSERT_EQ(c.rows(), a.rows() - rank(F, a));
    ASSERT_EQ(rank(F, c), c.rows());
  }
}

TEST(Oracle, Examples) {
  const RingSpec z30 = ring_make(RingKind::ModRing, 30);
  const Submodule s = kernel_pair_oracle(z30, {{15}}, {{10}});
  bf::VecSet multiples_of_3;
  for (u64 u = 0; u < 30; u += 3) multiples_of_3.insert({u});
  EXPECT_EQ(elements(s), multiples_of_3);
  EXPECT_EQ(bf::kernel_pair({{15}}, {{10}}, 30), multiples_of_3);

  const RingSpec gf2 = ring_make(RingKind::PrimeField, 2);
  EXPECT_TRUE(kernel_pair_oracle(gf2, identity(PrimeField(2), 2), {{1, 0}, {1, 1}}).is_full());
  EXPECT_TRUE(kernel_pair_oracle(ring_make(RingKind::PrimeField, 3), {{1}, {0}}, {{0}, {1}}).is_zero());
}

TEST(Oracle, NonSquareFreeModulus) {
  const RingSpec z12 = ring_make(RingKind::ModRing, 12);
  const ScalarMatrix a{{4}}, b{{6}};
  const Submodule s = kernel_pair_oracle(z12, a, b);
  EXPECT_TRUE(std::holds_alternative<EnumeratedSet>(s.presentation()));
  EXPECT_EQ(elements(s), bf::kernel_pair(a, b, 12));
  // 6u in 4Z/12 = {0,4,8} iff u even.
  EXPECT_EQ(elements(s).size(), 6u);
}

TEST(Oracle, Guard) {
  const RingSpec gf7 = ring_make(RingKind::PrimeField, 7);
  try {
    kernel_pair_oracle(gf7, ScalarMatrix(1, 1), ScalarMatrix(1, 8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleTooLarge);
  }
  EXPECT_THROW(kernel_pair_oracle(ring_make(RingKind::PolyRing, 2), ScalarMatrix(1, 1), ScalarMatrix(1, 1)), Error);
}

TEST(Shapes, Mismatch) {
  const PrimeField F(2);
  try {
    kernel_pair_projection(F, ScalarMatrix(2, 1), ScalarMatrix(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  EXPECT_THROW(kernel_pair_field(F, ScalarMatrix(1, 1), ScalarMatrix(1, 1), Method::Crt), Error);
}

TEST(Identities, TrivialAutomorphisms) {
  const PrimeField F(5);
  const ScalarMatrix a{{1, 2}, {3, 4}, {0, 0}}, b{{1}, {0}, {2}};
  const IdentityReport rep =
      check_identities(F, a, b, Automorphism::identity(F, 2), Automorphism::identity(F, 1), Automorphism::identity(F, 3));
  EXPECT_TRUE(rep.ok()) << rep.describe();
  EXPECT_NO_THROW(rep.require());
}

TEST(Identities, PermutationRelabelsTheOracle) {
  // Psi2 a permutation: ker(A | B Psi2) is ker(A | B) with coordinates swapped.
  const PrimeField F(3);
  const ScalarMatrix a{{1}, {1}}, b{{1, 0}, {2, 1}};
  const ScalarMatrix perm{{0, 1}, {1, 0}};
  const bf::VecSet direct = bf::kernel_pair(a, b, 3);
  const bf::VecSet permuted = bf::kernel_pair(a, multiply(F, b, perm), 3);
  bf::VecSet relabelled;
  for (const auto& u : direct) relabelled.insert({u[1], u[0]});
  EXPECT_EQ(permuted, relabelled);
  auto psi2 = Automorphism::make(F, perm);
  ASSERT_TRUE(psi2.has_value());
  EXPECT_TRUE(check_identities(F, a, b, Automorphism::identity(F, 1), *psi2, Automorphism::identity(F, 2)).ok());
  EXPECT_FALSE(Automorphism::make(F, {{1, 1}, {1, 1}}).has_value());
}

TEST(Splitting, DetectsCorruptedSection) {
  const PrimeField F(5);
  const ScalarMatrix a{{1, 0}, {0, 0}}, b{{1, 2}, {0, 0}};
  auto [r, w] = kernel_pair_projection(F, a, b);
  ASSERT_TRUE(check_splitting(F, r, w).ok());
  ASSERT_GT(w.section.cols(), 0u);
  auto bad = w;
  bad.section(0, 0) = F.add(bad.section(0, 0), 1);
  EXPECT_FALSE(check_splitting(F, r, bad).ok());
  bad = w;
  bad.section(2, 0) = F.add(bad.section(2, 0), 1);
  EXPECT_FALSE(check_splitting(F, r, bad).section_is_right_inverse);
}

TEST(Cardinality, FactoredProduct) {
  EXPECT_EQ(multiply({{2, 1}, {5, 1}}, {{5, 2}, {3, 1}}), (Cardinality{{2, 1}, {3, 1}, {5, 3}}));
  const PrimeField F(3);
  const auto r = kernel_pair_projection(F, {{1, 1}}, {{1, 2}}).first;
  EXPECT_TRUE(cardinality_identity(r));
}

// ---------------------------------------------------------------------------
// Properties over random instances.

TEST(KernelPairProperties, MethodsAgreeWithEachOtherAndTheOracle) {
  std::mt19937_64 rng(22);
  for (u64 p : {2u, 3u, 5u}) {
    const PrimeField F(p);
    for (int t = 0; t < 200; ++t) {
      const std::size_t rows = bf::pick(rng, 0, 4), q1 = bf::pick(rng, 0, 4), q2 = bf::pick(rng, 0, 3);
      const ScalarMatrix a = bf::random_matrix(rng, rows, q1, p), b = bf::random_matrix(rng, rows, q2, p);
      auto [proj, w] = kernel_pair_projection(F, a, b);
      ASSERT_EQ(proj.ker_bar, kernel_pair_preimage(F, a, b).ker_bar);
      ASSERT_EQ(proj.ker_bar, kernel_pair_quotient(F, a, b).first.ker_bar);
      ASSERT_EQ(elements(proj.ker_bar), bf::kernel_pair(a, b, p));
      ASSERT_EQ(elements(proj.ker_pair), bf::joint_kernel(a, b, p));
      ASSERT_TRUE(cardinality_identity(proj));
      const SplittingReport split = check_splitting(F, proj, w);
      ASSERT_TRUE(split.ok()) << split.describe();
    }
  }
}

TEST(KernelPairProperties, AutomorphismIdentities) {
  std::mt19937_64 rng(23);
  const PrimeField F(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = bf::pick(rng, 1, 3), q1 = bf::pick(rng, 1, 3), q2 = bf::pick(rng, 1, 3);
    const ScalarMatrix a = bf::random_matrix(rng, rows, q1, 5), b = bf::random_matrix(rng, rows, q2, 5);
    const IdentityReport rep = check_identities(F, a, b, Automorphism::random(F, q1, rng), Automorphism::random(F, q2, rng),
                                                Automorphism::random(F, rows, rng));
    ASSERT_TRUE(rep.ok()) << rep.describe();
  }
}

TEST(KernelPairProperties, OntoAndImageInclusionGiveFullModule) {
  std::mt19937_64 rng(24);
  const PrimeField F(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = bf::pick(rng, 1, 3), q2 = bf::pick(rng, 1, 3);
    const ScalarMatrix a = bf::random_matrix(rng, rows, bf::pick(rng, 0, 4), 3);
    const ScalarMatrix b = multiply(F, a, bf::random_matrix(rng, a.cols(), q2, 3));  // Im B in Im A
    ASSERT_TRUE(kernel_pair_projection(F, a, b).first.ker_bar.is_full());
    if (rank(F, a) == rows) {
      ASSERT_TRUE(kernel_pair_projection(F, a, bf::random_matrix(rng, rows, q2, 3)).first.ker_bar.is_full());
    }
  }
}
