#include "framekit/random.hpp"
#include "framekit/signal_space.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <numeric>

using namespace framekit;

namespace {

Signal random_signal(Rng& rng, const Grid& g) { return Signal(g, rng.vector(g.n())); }

double dist(const Signal& a, const Signal& b) { return (a - b).norm(); }

}  // namespace

TEST(Grid, RejectsNonPositive) {
  EXPECT_THROW(Grid(0, 4), Error);
  EXPECT_THROW(Grid(4, -1), Error);
  const Grid g(4, 3);
  EXPECT_EQ(g.n(), 12);
  EXPECT_DOUBLE_EQ(g.t(5), 1.25);
}

TEST(Signal, WeightedInnerProductMatchesCoordinates) {
  Rng rng(1);
  const Grid g(3, 5);
  const Signal f = random_signal(rng, g), h = random_signal(rng, g);
  EXPECT_NEAR(std::abs(f.inner(h) - h.coordinates().dot(f.coordinates())), 0, 1e-12);
  EXPECT_NEAR(f.norm_squared(), f.coordinates().squaredNorm(), 1e-12);
  EXPECT_THROW(f.inner(Signal::zeros(Grid(3, 4))), Error);
}

TEST(Translate, ZeroIsIdentity) {
  Rng rng(2);
  const Signal f = random_signal(rng, Grid(4, 4));
  EXPECT_EQ(translate(f, 0).values(), f.values());
}

TEST(Translate, IndicatorMovesOneUnit) {
  const Grid g(4, 4);
  EXPECT_EQ(translate(indicator(g, 0, 1), 1).values(), indicator(g, 1, 2).values());
  // cyclic wrap
  EXPECT_EQ(translate(indicator(g, 3, 4), 1).values(), indicator(g, 0, 1).values());
}

TEST(Translate, GroupInverse) {
  Rng rng(3);
  const Signal f = random_signal(rng, Grid(4, 4));
  EXPECT_EQ(translate(translate(f, 1.25), -1.25).values(), f.values());
}

TEST(Translate, OffGridShiftRejected) {
  try {
    translate(Signal::zeros(Grid(4, 4)), 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OffGridShift);
  }
}

TEST(Modulate, ZeroIsIdentity) {
  Rng rng(4);
  const Signal f = random_signal(rng, Grid(4, 4));
  EXPECT_LE(dist(modulate(f, 0), f), 1e-15);
}

TEST(Modulate, Inverse) {
  Rng rng(5);
  const Signal f = random_signal(rng, Grid(4, 4));
  EXPECT_LE(dist(modulate(modulate(f, 1.5), -1.5), f), 1e-13);
}

TEST(Modulate, PreservesInnerProducts) {
  Rng rng(6);
  const Grid g(4, 4);
  const Signal f = random_signal(rng, g), h = random_signal(rng, g);
  EXPECT_NEAR(std::abs(modulate(f, 0.75).inner(modulate(h, 0.75)) - f.inner(h)), 0, 1e-12);
}

TEST(Modulate, OffGridFrequencyRejected) {
  try {
    modulate(Signal::zeros(Grid(4, 4)), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OffGridFrequency);
  }
}

TEST(Modulate, IntegerFrequencyIsExactCharacter) {
  const Grid g(4, 4);
  const Signal one = indicator(g, 0, 4);
  const Signal e1 = modulate(one, 1.0);
  for (Eigen::Index i = 0; i < g.n(); ++i) {
    EXPECT_LE(std::abs(e1[i] - std::polar(1.0, 2 * std::numbers::pi * g.t(i))), 1e-12) << i;
  }
}

TEST(Dilate, OneIsIdentity) {
  Rng rng(7);
  const Signal f = random_signal(rng, Grid(3, 5));
  EXPECT_EQ(dilate(f, 1).values(), f.values());
}

TEST(Dilate, InverseModN) {
  Rng rng(8);
  const Grid g(3, 5);  // n = 15
  const Signal f = random_signal(rng, g);
  // 2 * 8 = 16 = 1 mod 15
  EXPECT_EQ(dilate(dilate(f, 2), 8).values(), f.values());
}

TEST(Dilate, PreservesNorm) {
  Rng rng(9);
  const Grid g(4, 4);
  for (long long c : {1, 3, 5, 7, 9, 11, 13, 15}) {
    const Signal f = random_signal(rng, g);
    EXPECT_NEAR(dilate(f, c).norm(), f.norm(), 1e-12);
  }
}

TEST(Dilate, NonCoprimeRejected) {
  try {
    dilate(Signal::zeros(Grid(4, 4)), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonCoprimeDilation);
  }
}

TEST(Indicator, UnitInterval) { EXPECT_NEAR(indicator(Grid(4, 4), 0, 1).norm_squared(), 1, 1e-15); }

TEST(Indicator, DisjointIntervalsAreOrthogonal) {
  const Grid g(4, 4);
  EXPECT_EQ(indicator(g, 2, 3).inner(indicator(g, 0, 1)), Complex(0, 0));
}

TEST(Indicator, WholePeriod) {
  const Signal one = indicator(Grid(4, 4), 0, 4);
  EXPECT_NEAR(one.norm_squared(), 4, 1e-15);
  EXPECT_EQ(one.values(), Vector::Ones(16));
}

TEST(Indicator, BadEndpointsRejected) {
  const Grid g(4, 4);
  EXPECT_THROW(indicator(g, 0.1, 1), Error);
  EXPECT_THROW(indicator(g, 2, 2), Error);
  EXPECT_THROW(indicator(g, 0, 5), Error);
  try {
    indicator(g, -1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OffGridEndpoints);
  }
}

TEST(MultOperator, ConstantOneIsIdentity) {
  const Grid g(4, 4);
  EXPECT_EQ(mult_operator(indicator(g, 0, 4)), Operator::Identity(16, 16));
}

TEST(MultOperator, IndicatorIsProjection) {
  const Operator p = mult_operator(indicator(Grid(4, 4), 0, 1));
  EXPECT_EQ(p * p, p);
}

TEST(MultOperator, RestrictsExampleWitness) {
  const Grid g(4, 4);
  const Signal h = indicator(g, 0, 1) + indicator(g, 2, 3);
  const Vector th = mult_operator(indicator(g, 0, 1)) * h.coordinates();
  EXPECT_NEAR(th.squaredNorm(), 1, 1e-15);
  EXPECT_EQ(th, indicator(g, 0, 1).coordinates());
}

TEST(ShiftOperators, ForwardAndBackwardOnBasis) {
  const TruncatedSequenceSpace s(6, 1);
  const ShiftPair p = shift_operators(s);
  EXPECT_EQ(p.forward * s.chi(1), s.chi(2));
  EXPECT_EQ(p.backward * s.chi(1), Vector::Zero(6));
  EXPECT_EQ(p.backward * s.chi(3), s.chi(2));
  EXPECT_EQ(p.forward, p.backward.adjoint());
}

TEST(ShiftOperators, ForwardIsIsometricOnMargin) {
  Rng rng(10);
  const TruncatedSequenceSpace s(10, 1);
  const Operator fwd = shift_operators(s).forward;
  const Vector f = s.margin_subspace() * rng.vector(9);
  EXPECT_NEAR((fwd * f).norm(), f.norm(), 1e-13);
  // the boundary coordinate is lost
  EXPECT_NEAR((fwd * s.chi(10)).norm(), 0, 0);
}

TEST(SummingOperator, FirstBasisVector) {
  const TruncatedSequenceSpace s(5, 0);
  EXPECT_EQ(summing_operator(s) * s.chi(1), s.chi(1) + s.chi(2));
}

TEST(SummingOperator, ZeroMapsToZero) {
  const TruncatedSequenceSpace s(5, 0);
  EXPECT_EQ(summing_operator(s) * Vector::Zero(5), Vector::Zero(5));
}

TEST(SummingOperator, AdjointOnSecondBasisVector) {
  const TruncatedSequenceSpace s(5, 0);
  EXPECT_EQ(summing_operator(s).adjoint() * s.chi(2), s.chi(1) + s.chi(2));
}

TEST(TruncatedSequenceSpace, Validation) {
  EXPECT_THROW(TruncatedSequenceSpace(0, 0), Error);
  EXPECT_THROW(TruncatedSequenceSpace(3, 3), Error);
  EXPECT_THROW(TruncatedSequenceSpace(3, 0).chi(4), Error);
  EXPECT_EQ(TruncatedSequenceSpace(5, 2).margin_subspace().cols(), 3);
}

TEST(OperatorOf, TranslateZeroIsIdentity) {
  const Grid g(2, 3);
  EXPECT_EQ(operator_of(g, GridOp::Translate, 0), Operator::Identity(6, 6));
}

TEST(OperatorOf, ModulationsCancel) {
  const Grid g(3, 4);
  const Operator m = operator_of(g, GridOp::Modulate, 0.5) * operator_of(g, GridOp::Modulate, -0.5);
  EXPECT_LE(op_norm(m - Operator::Identity(12, 12)), 1e-13);
}

TEST(OperatorOf, TranslateIsPermutation) {
  const Grid g(4, 4);
  const Operator t = operator_of(g, GridOp::Translate, 1.5);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (t(i, j) == Complex(1, 0)) ++ones;
      else EXPECT_EQ(t(i, j), Complex(0, 0));
    }
    EXPECT_EQ(ones, 1);
  }
  EXPECT_LE(op_norm(t.adjoint() * t - Operator::Identity(16, 16)), 0);
}

TEST(OperatorOf, MatchesSignalAction) {
  Rng rng(12);
  const Grid g(4, 4);
  const Signal f = random_signal(rng, g);
  EXPECT_LE((operator_of(g, GridOp::Modulate, 0.75) * f.coordinates() - modulate(f, 0.75).coordinates()).norm(),
            1e-13);
  EXPECT_LE((operator_of(g, GridOp::Dilate, 3) * f.coordinates() - dilate(f, 3).coordinates()).norm(), 0);
  EXPECT_THROW(operator_of(g, GridOp::Dilate, 1.5), Error);
}
