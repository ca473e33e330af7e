#include <gtest/gtest.h>

#include <cmath>

#include "ree_lab/criteria.hpp"
#include "ree_lab/entropy.hpp"
#include "ree_lab/errors.hpp"
#include "test_util.hpp"

namespace ree_lab {
namespace {

using testing::formula_state;

DensityMatrix diag_state(std::initializer_list<double> p) {
  RVector v(static_cast<Eigen::Index>(p.size()));
  Eigen::Index i = 0;
  for (double x : p) v(i++) = x;
  return DensityMatrix(HermitianMatrix::diagonal(v));
}

DensityMatrix unitary_conjugate(const DensityMatrix& r, const CMatrix& u) {
  return DensityMatrix(HermitianMatrix(u * r.matrix() * u.adjoint()), r.dims());
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann_entropy(singlet()), 0.0, 1e-12);
  for (int d = 2; d <= 6; ++d) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d)), std::log2(d), 1e-13);
  }
  EXPECT_NEAR(von_neumann_entropy(diag_state({0.9, 0.1})), 0.468995593589281, 1e-13);
  EXPECT_NEAR(binary_entropy(0.9), 0.468995593589281, 1e-13);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
}

TEST(RelativeEntropy, Examples) {
  Rng rng(1);
  const auto r = random_density(3, 3, rng);
  EXPECT_NEAR(relative_entropy(r, r).bits(), 0.0, 1e-12);
  const auto s = random_density(3, 2, rng);
  EXPECT_NEAR(relative_entropy(s, DensityMatrix::maximally_mixed(3)).bits(),
              std::log2(3.0) - von_neumann_entropy(s), 1e-12);
  EXPECT_TRUE(relative_entropy(diag_state({1, 0}), diag_state({0, 1})).is_infinite());
  EXPECT_NEAR(relative_entropy(diag_state({0.5, 0.5}), diag_state({0.9, 0.1})).bits(),
              0.736965594166206, 1e-13);
}

TEST(RelativeEntropy, FrozenNonCommutingPair) {
  CMatrix s(2, 2), r(2, 2);
  s << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  r << 0.4, Complex(0, -0.1), Complex(0, 0.1), 0.6;
  const DensityMatrix sigma{HermitianMatrix(s)}, rho{HermitianMatrix(r)};
  // reference from an independent scipy.linalg.logm evaluation
  EXPECT_NEAR(relative_entropy(sigma, rho).bits(), 0.516194154934976, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(sigma), 0.721928094887362, 1e-12);
}

TEST(RelativeEntropy, SupportInclusionIsFinite) {
  // sigma supported inside rho's support
  EXPECT_NEAR(relative_entropy(diag_state({1, 0, 0}), diag_state({0.5, 0.5, 0})).bits(), 1.0, 1e-12);
  EXPECT_TRUE(relative_entropy(diag_state({0.5, 0, 0.5}), diag_state({0.5, 0.5, 0})).is_infinite());
}

TEST(RelativeEntropy, KleinInequality) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 5;
    const auto s = random_density(d, 1 + trial % d, rng);
    const auto r = random_density(d, d, rng);
    EXPECT_GE(relative_entropy(s, r).bits(), 0.0);
    // the unclamped trace formula on a full-rank sigma
    const auto sf = regularize(s, 1e-3).hermitian();
    EXPECT_GE(hs_inner(sf, matrix_log(sf) - matrix_log(r.hermitian())), -1e-12);
  }
}

TEST(RelativeEntropy, UnitaryInvariance) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 4;
    const auto s = random_density(d, d, rng);
    const auto r = random_density(d, d, rng);
    const CMatrix u = haar_unitary(d, rng);
    EXPECT_NEAR(relative_entropy(unitary_conjugate(s, u), unitary_conjugate(r, u)).bits(),
                relative_entropy(s, r).bits(), 1e-10);
    EXPECT_NEAR(von_neumann_entropy(unitary_conjugate(s, u)), von_neumann_entropy(s), 1e-10);
  }
}

TEST(RelativeEntropy, AdditiveOnProducts) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s1 = random_density(2, 2, rng), r1 = random_density(2, 2, rng);
    const auto s2 = random_density(3, 3, rng), r2 = random_density(3, 3, rng);
    const double joint =
        relative_entropy(product_state(s1, s2), product_state(r1, r2)).bits();
    EXPECT_NEAR(joint, relative_entropy(s1, r1).bits() + relative_entropy(s2, r2).bits(), 1e-10);
    EXPECT_NEAR(von_neumann_entropy(product_state(s1, s2)),
                von_neumann_entropy(s1) + von_neumann_entropy(s2), 1e-10);
  }
}

TEST(NegativeConditionalEntropy, Examples) {
  EXPECT_NEAR(negative_conditional_entropy(singlet(), Side::A), 1.0, 1e-12);
  EXPECT_NEAR(negative_conditional_entropy(DensityMatrix::maximally_mixed(BipartiteDims{2, 2}), Side::A),
              -1.0, 1e-12);
  Rng rng(5);
  const auto a = random_density(2, 2, rng);
  const auto b = random_density(3, 3, rng);
  EXPECT_NEAR(negative_conditional_entropy(product_state(a, b), Side::A), -von_neumann_entropy(b),
              1e-12);
}

TEST(ConditionalEntropyGap, SelfPairEqualsConditionalEntropy) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_density(4, 4, rng).with_dims({2, 2});
    if (!ppt_criterion(s).holds) continue;
    const auto gap = theorem1_gap(s, s, Side::A);
    ASSERT_EQ(gap.kind, Theorem1Gap::Kind::Finite);
    EXPECT_NEAR(gap.value, -negative_conditional_entropy(s, Side::A), 1e-10);
    EXPECT_GE(gap.value, -1e-10);
  }
}

TEST(ConditionalEntropyGap, ProductStateGap) {
  Rng rng(7);
  const auto s = product_state(random_density(2, 2, rng), random_density(3, 3, rng));
  const auto gap = theorem1_gap(s, s, Side::A);
  EXPECT_NEAR(gap.value, von_neumann_entropy(partial_trace_A(s)), 1e-10);
}

TEST(ConditionalEntropyGap, InfiniteAndIndeterminate) {
  const auto pure00 = pure_from_schmidt({1.0}, {2, 2}).density();
  const auto rho = product_state(diag_state({0, 1}), DensityMatrix::maximally_mixed(2));
  // reduced supports are disjoint: both terms infinite
  EXPECT_EQ(theorem1_gap(pure00, rho, Side::A).kind, Theorem1Gap::Kind::Indeterminate);
  // joint support violated, reduced term finite
  const auto rho2 = product_state(DensityMatrix::maximally_mixed(2), diag_state({0, 1}));
  const auto gap = theorem1_gap(pure00, rho2, Side::A);
  EXPECT_EQ(gap.kind, Theorem1Gap::Kind::Infinite);
  EXPECT_TRUE(gap.scored());
}

TEST(LogOrderCheck, Examples) {
  const auto mm = log_order_check(DensityMatrix::maximally_mixed(BipartiteDims{2, 3}));
  EXPECT_TRUE(mm.holds);
  EXPECT_NEAR(mm.min_eigenvalue, std::log(3.0), 1e-12);
  EXPECT_FALSE(log_order_check(regularize(singlet(), 1e-3)).holds);
  EXPECT_THROW(log_order_check(singlet()), DomainError);
  Rng rng(8);
  int checked = 0;
  while (checked < 200) {
    const auto r = random_density(4, 4, rng).with_dims({2, 2});
    if (!ppt_criterion(r, 0.0).holds) continue;
    ++checked;
    EXPECT_TRUE(log_order_check(r).holds);
  }
}

TEST(ConditionalEntropyBound, Examples) {
  EXPECT_NEAR(lemma2_bound(singlet()), 1.0, 1e-12);
  EXPECT_NEAR(lemma2_bound(DensityMatrix::maximally_mixed(BipartiteDims{2, 2})), -1.0, 1e-12);
  const auto skew = pure_from_schmidt({std::sqrt(0.9), std::sqrt(0.1)}, {2, 2}).density();
  EXPECT_NEAR(lemma2_bound(skew), 0.468995593589281, 1e-12);
  const auto rho = formula_state({2, 3});
  EXPECT_NEAR(lemma2_bound(rho), 1.432664189396031 - 1.935385183207414, 1e-12);
  EXPECT_EQ(lemma2_side(rho), Side::B);
  EXPECT_EQ(lemma2_side(singlet()), Side::A);
}

}  // namespace
}  // namespace ree_lab
