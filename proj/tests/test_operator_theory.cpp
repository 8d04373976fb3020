#include "framekit/operator_theory.hpp"
#include "framekit/random.hpp"
#include "framekit/signal_space.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace framekit;

namespace {

Operator diag(std::initializer_list<Complex> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex x : v) d(i++) = x;
  return d.asDiagonal();
}

}  // namespace

TEST(Hyponormality, UnitaryIsNormal) {
  Rng rng(1);
  const HyponormalityReport h = hyponormality(rng.unitary(6));
  EXPECT_TRUE(h.global_verdict);
  EXPECT_LE(h.commutator_norm, 1e-12);
}

TEST(Hyponormality, DiagonalIsNormal) { EXPECT_TRUE(hyponormality(diag({1, 2})).global_verdict); }

TEST(Hyponormality, TruncatedShiftFailsGloballyHoldsOnMargin) {
  const TruncatedSequenceSpace s(8, 1);
  const Operator fwd = shift_operators(s).forward;
  const HyponormalityReport h = hyponormality(fwd, {}, s.margin_subspace());
  EXPECT_FALSE(h.global_verdict);
  EXPECT_NEAR(h.commutator_min_eig, -1, 1e-14);
  ASSERT_TRUE(h.margin_verdict.has_value());
  EXPECT_TRUE(*h.margin_verdict);
  // the self-commutator is supported on the two boundary indices
  const Operator k = self_commutator(fwd);
  EXPECT_EQ(k(0, 0), Complex(1, 0));
  EXPECT_EQ(k(7, 7), Complex(-1, 0));
  EXPECT_NEAR((k.cwiseAbs().sum()), 2, 0);
}

TEST(Hyponormality, TraceOfCommutatorVanishes) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = rng.integer(1, 10);
    const Operator a = rng.matrix(n, n);
    const HyponormalityReport h = hyponormality(a);
    EXPECT_NEAR(h.commutator_trace, 0, 1e-10 * std::max(1.0, op_norm(a) * op_norm(a)));
    if (h.global_verdict) {
      EXPECT_LE(h.commutator_norm, 10 * 1e-9 * std::max(1.0, op_norm(a) * op_norm(a)));
    }
  }
}

TEST(Hyponormality, RejectsNonSquare) { EXPECT_THROW(hyponormality(Operator::Zero(2, 3)), Error); }

TEST(RelativeHyponormality, IdentityPair) {
  const RelativeHyponormality r = relative_hyponormality(Operator::Identity(3, 3), Operator::Identity(3, 3));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lambda_opt, 1, 1e-14);
}

TEST(RelativeHyponormality, ZeroLeftSide) {
  const RelativeHyponormality r = relative_hyponormality(Operator::Zero(2, 2), Operator::Identity(2, 2));
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(std::isinf(r.lambda_opt));
  EXPECT_GT(r.witness.norm(), 0);
}

TEST(RelativeHyponormality, ScaledIdentity) {
  const RelativeHyponormality r = relative_hyponormality(Operator::Identity(2, 2), 2.0 * Operator::Identity(2, 2));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lambda_opt, 4, 1e-13);
}

TEST(RelativeHyponormality, ZeroRightSideIsDegenerate) {
  const RelativeHyponormality r = relative_hyponormality(Operator::Identity(2, 2), Operator::Zero(2, 2));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.degenerate_zero);
  EXPECT_EQ(r.lambda_opt, 0);
}

TEST(RelativeHyponormality, RectangularXi) {
  // Theta on C^2, Xi : C^3 -> C^2
  Operator xi = Operator::Zero(2, 3);
  xi(0, 0) = 1;
  xi(1, 2) = 3;
  const RelativeHyponormality r = relative_hyponormality(Operator::Identity(2, 2), xi);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.lambda_opt, 9, 1e-12);
  EXPECT_THROW(relative_hyponormality(Operator::Identity(3, 3), xi), Error);
}

TEST(Douglas, ConstructedInclusion) {
  Rng rng(3);
  const Operator t2 = rng.matrix(6, 2) * rng.matrix(2, 5);
  const Operator s0 = rng.matrix(5, 4);
  const DouglasReport d = douglas_check(t2 * s0, t2);
  EXPECT_TRUE(d.range_included);
  EXPECT_TRUE(d.majorized());
  ASSERT_TRUE(d.factor.has_value());
  EXPECT_TRUE(d.consistent);
  EXPECT_LE(op_norm(t2 * *d.factor - t2 * s0), 1e-8 * op_norm(t2 * s0));
}

TEST(Douglas, IdentityAgainstRankOneProjection) {
  const DouglasReport d = douglas_check(Operator::Identity(2, 2), diag({1, 0}));
  EXPECT_FALSE(d.range_included);
  EXPECT_FALSE(d.majorized());
  EXPECT_FALSE(d.factor.has_value());
  EXPECT_TRUE(d.consistent);
}

TEST(Douglas, DiagonalArithmetic) {
  const DouglasReport d = douglas_check(diag({1, 0}), diag({2, 0}));
  EXPECT_TRUE(d.range_included);
  EXPECT_NEAR(d.lambda_min, 0.5, 1e-14);
  ASSERT_TRUE(d.factor.has_value());
  EXPECT_LE(op_norm(*d.factor - diag({0.5, 0})), 1e-14);
  EXPECT_TRUE(d.consistent);
}

TEST(Douglas, RowMismatchThrows) { EXPECT_THROW(douglas_check(Operator::Zero(2, 2), Operator::Zero(3, 3)), Error); }

TEST(Djordjevic, UnitaryIsHyponormal) {
  Rng rng(4);
  const DjordjevicVerdict d = djordjevic_hyponormal(rng.unitary(5));
  EXPECT_TRUE(d.verdict);
  EXPECT_NEAR(d.witness_min_eig, 0, 1e-10);
}

TEST(Djordjevic, ZeroOperator) { EXPECT_TRUE(djordjevic_hyponormal(Operator::Zero(3, 3)).verdict); }

TEST(Djordjevic, JordanBlockIsNotHyponormal) {
  Operator j = Operator::Zero(2, 2);
  j(0, 1) = 1;
  const DjordjevicVerdict d = djordjevic_hyponormal(j);
  EXPECT_FALSE(d.verdict);
  EXPECT_LT(d.witness_min_eig, 0);
  EXPECT_FALSE(hyponormality(j).global_verdict);
}

TEST(Djordjevic, AgreesWithCommutatorOnRandomMatrices) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = rng.integer(1, 12);
    const Operator a = rng.matrix(n, n);
    EXPECT_EQ(djordjevic_hyponormal(a).verdict, hyponormality(a).global_verdict) << "trial " << t;
  }
  for (int t = 0; t < 20; ++t) {
    const Operator a = rng.normal_with_spectrum(rng.vector(rng.integer(1, 12)));
    EXPECT_TRUE(djordjevic_hyponormal(a).verdict);
    EXPECT_TRUE(hyponormality(a).global_verdict);
  }
}
