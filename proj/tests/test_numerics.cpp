#include "framekit/numerics.hpp"
#include "framekit/random.hpp"
#include "framekit/signal_space.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace framekit;

namespace {

Operator mat2(Complex a, Complex b, Complex c, Complex d) {
  Operator m(2, 2);
  m << a, b, c, d;
  return m;
}

Operator diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

constexpr Complex I{0.0, 1.0};

}  // namespace

TEST(Adjoint, Identity) { EXPECT_TRUE(adjoint(Operator::Identity(3, 3)).isApprox(Operator::Identity(3, 3))); }

TEST(Adjoint, RealShiftTransposes) {
  EXPECT_EQ(adjoint(mat2(0, 1, 0, 0)), mat2(0, 0, 1, 0));
}

TEST(Adjoint, ConjugatesScalar) {
  Operator m(1, 1);
  m(0, 0) = I;
  EXPECT_EQ(adjoint(m)(0, 0), -I);
}

TEST(Adjoint, Involution) {
  Rng rng(3);
  const Operator m = rng.matrix(4, 6);
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(HermEig, DiagonalInputSortsAscending) {
  const HermEig e = herm_eig(diag({3, 1, 2}));
  ASSERT_EQ(e.values.size(), 3);
  EXPECT_NEAR(e.values(0), 1, 1e-14);
  EXPECT_NEAR(e.values(1), 2, 1e-14);
  EXPECT_NEAR(e.values(2), 3, 1e-14);
  // columns are coordinate vectors up to phase: e_2, e_3, e_1
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(2, 1)), 1, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 2)), 1, 1e-14);
}

TEST(HermEig, TwoByTwoClosedForm) {
  const HermEig e = herm_eig(mat2(0, 1, 1, 0));
  EXPECT_NEAR(e.values(0), -1, 1e-14);
  EXPECT_NEAR(e.values(1), 1, 1e-14);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(e.vectors.col(0).dot(Vector{{r, -r}})), 1, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors.col(1).dot(Vector{{r, r}})), 1, 1e-14);
}

TEST(HermEig, ZeroMatrix) {
  const HermEig e = herm_eig(Operator::Zero(2, 2));
  EXPECT_EQ(e.values(0), 0);
  EXPECT_EQ(e.values(1), 0);
  EXPECT_TRUE((e.vectors.adjoint() * e.vectors).isApprox(Operator::Identity(2, 2)));
}

TEST(HermEig, RejectsNonHermitian) {
  try {
    herm_eig(mat2(0, 1, 0, 0));
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(HermEig, RejectsNonSquare) {
  try {
    herm_eig(Operator::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSquare);
  }
}

TEST(HermEig, RandomReconstruction) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = rng.integer(1, 12);
    const Operator h = rng.hermitian(n);
    const HermEig e = herm_eig(h);
    EXPECT_LE(op_norm(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - h), 1e-9 * op_norm(h));
    for (Eigen::Index i = 0; i < n; ++i) {
      EXPECT_LE((h * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm(), 1e-10 * op_norm(h));
    }
  }
}

TEST(Svd, Diagonal) {
  const Svd d = svd(diag({2, 1}));
  EXPECT_NEAR(d.singulars(0), 2, 1e-14);
  EXPECT_NEAR(d.singulars(1), 1, 1e-14);
}

TEST(Svd, RankOneOnes) {
  const Svd d = svd(mat2(1, 1, 1, 1));
  EXPECT_NEAR(d.singulars(0), 2, 1e-14);
  EXPECT_NEAR(d.singulars(1), 0, 1e-14);
}

TEST(Svd, Zero) {
  const Svd d = svd(Operator::Zero(3, 2));
  for (Eigen::Index i = 0; i < d.singulars.size(); ++i) EXPECT_EQ(d.singulars(i), 0);
}

TEST(Svd, RandomRectangularReconstruction) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Operator m = rng.matrix(rng.integer(1, 9), rng.integer(1, 9));
    const Svd d = svd(m);
    EXPECT_LE(op_norm(d.left * d.singulars.asDiagonal() * d.right.adjoint() - m), 1e-10 * op_norm(m));
    for (Eigen::Index i = 0; i + 1 < d.singulars.size(); ++i) EXPECT_GE(d.singulars(i), d.singulars(i + 1));
  }
}

TEST(Pinv, DiagonalWithZero) { EXPECT_TRUE(pinv(diag({2, 0})).isApprox(diag({0.5, 0}))); }

TEST(Pinv, Identity) { EXPECT_TRUE(pinv(Operator::Identity(4, 4)).isApprox(Operator::Identity(4, 4))); }

TEST(Pinv, RankOneOnes) {
  EXPECT_LE(op_norm(pinv(mat2(1, 1, 1, 1)) - 0.25 * mat2(1, 1, 1, 1)), 1e-14);
}

TEST(Pinv, ZeroMatrixTransposes) {
  const Operator p = pinv(Operator::Zero(3, 2));
  EXPECT_EQ(p.rows(), 2);
  EXPECT_EQ(p.cols(), 3);
  EXPECT_EQ(op_norm(p), 0);
}

TEST(Pinv, PenroseIdentitiesOnRandomRectangular) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index r = rng.integer(1, 10), c = rng.integer(1, 10);
    const Operator m = rng.coin() ? rng.matrix(r, c) : Operator(rng.matrix(r, 1) * rng.matrix(1, c));
    const Operator p = pinv(m);
    const double s = std::max(op_norm(m), op_norm(p));
    EXPECT_LE(op_norm(m * p * m - m), 1e-8 * s);
    EXPECT_LE(op_norm(p * m * p - p), 1e-8 * s);
    EXPECT_LE(op_norm((m * p).adjoint() - m * p), 1e-8 * s);
    EXPECT_LE(op_norm((p * m).adjoint() - p * m), 1e-8 * s);
    EXPECT_LE(op_norm(pinv(p) - m), 1e-7 * op_norm(m));
  }
}

TEST(NumericalRank, CountsAboveCutoff) {
  EXPECT_EQ(numerical_rank(diag({1, 1e-12, 0})), 1);
  EXPECT_EQ(numerical_rank(diag({1, 1e-9, 0})), 2);
  EXPECT_EQ(numerical_rank(Operator::Zero(2, 2)), 0);
}

TEST(IsPsd, Identity) {
  const PsdVerdict v = is_psd(Operator::Identity(3, 3));
  EXPECT_TRUE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, 1, 1e-14);
}

TEST(IsPsd, Indefinite) {
  const PsdVerdict v = is_psd(diag({1, -1}));
  EXPECT_FALSE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, -1, 1e-14);
}

TEST(IsPsd, TruncatedShiftCommutatorHasTraceZero) {
  const Operator t = shift_operators(TruncatedSequenceSpace(4, 0)).forward;
  const Operator k = t.adjoint() * t - t * t.adjoint();
  const PsdVerdict v = is_psd(k);
  EXPECT_FALSE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, -1, 1e-14);
  EXPECT_NEAR(std::abs(k.trace()), 0, 1e-14);
}

TEST(IsPsd, TinyNegativeWithinFloorAccepted) {
  EXPECT_TRUE(is_psd(diag({1, -1e-12})).verdict);
  EXPECT_FALSE(is_psd(diag({1, -1e-6})).verdict);
}

TEST(IsPsd, RandomGramMatrices) {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const Operator m = rng.matrix(rng.integer(1, 12), rng.integer(1, 12));
    EXPECT_TRUE(is_psd(Operator(m.adjoint() * m)).verdict);
  }
}

TEST(RangeInclusion, Reflexive) {
  Rng rng(2);
  const Operator b = rng.matrix(5, 2);
  EXPECT_TRUE(range_inclusion(b, b));
}

TEST(RangeInclusion, FullRangeNotInRankOne) {
  EXPECT_FALSE(range_inclusion(Operator::Identity(2, 2), diag({1, 0})));
}

TEST(RangeInclusion, ElementaryProjectionNotInOnesRange) {
  // e1 is not in span{(1,1)}: confirmed false
  EXPECT_FALSE(range_inclusion(diag({1, 0}), mat2(1, 1, 1, 1)));
  EXPECT_TRUE(range_inclusion(mat2(1, 1, 1, 1), mat2(2, 0, 2, 0)));
}

TEST(RangeInclusion, ZeroIsIncludedEverywhere) {
  EXPECT_TRUE(range_inclusion(Operator::Zero(3, 2), diag({1, 0, 0})));
  EXPECT_TRUE(range_inclusion(Operator::Zero(2, 2), Operator::Zero(2, 2)));
}

TEST(RangeInclusion, DimensionMismatchThrows) {
  EXPECT_THROW(range_inclusion(Operator::Zero(2, 2), Operator::Zero(3, 3)), Error);
}

TEST(Majorization, DiagonalConstantAndWitness) {
  const Majorization m = majorization(diag({1, 3}), diag({1, 1}));
  ASSERT_TRUE(m.finite);
  EXPECT_NEAR(m.constant, 3, 1e-12);
  EXPECT_NEAR(std::abs(m.witness(1)), 1, 1e-12);
}

TEST(Majorization, KernelObstructionIsInfinite) {
  const Majorization m = majorization(diag({1, 1}), diag({1, 0}));
  EXPECT_FALSE(m.finite);
  EXPECT_TRUE(std::isinf(m.constant));
  EXPECT_NEAR(std::abs(m.kernel_witness(1)), 1, 1e-12);
  EXPECT_NEAR(m.kernel_excess, 1, 1e-12);
}

TEST(Majorization, ZeroLeftSideHasZeroConstant) {
  const Majorization m = majorization(Operator::Zero(2, 2), diag({1, 0}));
  EXPECT_TRUE(m.finite);
  EXPECT_EQ(m.constant, 0);
}

TEST(Majorization, RandomPencilIsSharp) {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = rng.integer(1, 8);
    const Operator a = rng.matrix(n, n), b = rng.matrix(n, n);
    const Operator x = a * a.adjoint(), y = b * b.adjoint() + 0.1 * Operator::Identity(n, n);
    const Majorization m = majorization(x, y);
    ASSERT_TRUE(m.finite);
    EXPECT_TRUE(is_psd(Operator(m.constant * y - x), Tolerance{1e-8, 1e-10, 1e-8}).verdict);
    EXPECT_NEAR(quad(x, m.witness) / quad(y, m.witness), m.constant, 1e-8 * m.constant);
  }
}

TEST(LowerConstant, VacuousAndZeroCases) {
  const LowerConstant vac = lower_constant(diag({1, 1}), Operator::Zero(2, 2));
  EXPECT_TRUE(vac.vacuous);
  EXPECT_TRUE(std::isinf(vac.constant));
  const LowerConstant zero = lower_constant(diag({1, 0}), diag({0, 1}));
  EXPECT_EQ(zero.constant, 0);
  EXPECT_NEAR(std::abs(zero.witness(1)), 1, 1e-12);
}

TEST(LowerConstant, HandlesCrossTerms) {
  // S = [[1, 0],[0, 0]] against C = [[1,1],[1,1]]: no c > 0 with cC <= S
  const LowerConstant l = lower_constant(diag({1, 0}), mat2(1, 1, 1, 1));
  EXPECT_EQ(l.constant, 0);
  const LowerConstant ok = lower_constant(diag({2, 3}), diag({1, 1}));
  EXPECT_NEAR(ok.constant, 2, 1e-12);
}

TEST(Tolerance, ValidateRejectsNegativeOrNonFinite) {
  EXPECT_THROW((Tolerance{-1, 1e-10, 1e-8}).validate(), Error);
  EXPECT_THROW((Tolerance{1e-9, std::nan(""), 1e-8}).validate(), Error);
  EXPECT_NO_THROW(Tolerance{}.validate());
}

TEST(Random, SeedReproducible) {
  Rng a(99), b(99);
  EXPECT_EQ(a.matrix(3, 3), b.matrix(3, 3));
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_EQ(trial_seed(5, 7), trial_seed(5, 7));
}

TEST(Random, UnitaryAndIsometry) {
  Rng rng(8);
  const Operator u = rng.unitary(6);
  EXPECT_LE(op_norm(u.adjoint() * u - Operator::Identity(6, 6)), 1e-12);
  const Operator v = rng.isometry(9, 4);
  EXPECT_LE(op_norm(v.adjoint() * v - Operator::Identity(4, 4)), 1e-12);
}
