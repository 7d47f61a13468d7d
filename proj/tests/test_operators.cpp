#include <gtest/gtest.h>

#include "support.hpp"

using namespace qgame;
using namespace qgame::testing;

TEST(Operators, SwapConversionAndTAct_OnBasis) {
  const Operator4 s = build_swap(), c = build_conversion(), t = build_T();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto v = JointState::basis(i, j);
      EXPECT_EQ((s * v)(j, i), Complex(1.0));
      EXPECT_EQ((c * v)(1 - i, 1 - j), Complex(1.0));
      EXPECT_EQ((t * v)(1 - j, 1 - i), Complex(1.0));
    }
  }
}

TEST(Operators, AlgebraicRelations) {
  const Operator4 s = build_swap(), c = build_conversion(), t = build_T();
  const Operator4 id = Operator4::identity();
  EXPECT_EQ(max_abs_diff(s * s, id), 0.0);
  EXPECT_EQ(max_abs_diff(c * c, id), 0.0);
  EXPECT_EQ(max_abs_diff(t * t, id), 0.0);
  EXPECT_EQ(max_abs_diff(s * c, t), 0.0);
  EXPECT_EQ(max_abs_diff(s + t - c, id), 0.0);
  EXPECT_EQ(max_abs_diff(s * c, c * s), 0.0);
}

TEST(Operators, CorrelationAtZeroIsIdentity) {
  EXPECT_LE(max_abs_diff(build_correlation({0.0, 0.0}), Operator4::identity()), 1e-15);
}

TEST(Operators, CorrelationMatchesMatrixExponential) {
  Sampler rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto g = rng.gamma();
    const Operator4 oracle = expm_i(Complex(0.5 * g.gamma1()) * build_swap()) *
                             expm_i(Complex(0.5 * g.gamma2()) * build_T());
    EXPECT_LE(max_abs_diff(build_correlation(g), oracle), 1e-12);
  }
}

TEST(Operators, CorrelationIsUnitaryAndPeriodicUpToSign) {
  Sampler rng(12);
  for (int k = 0; k < 1000; ++k) {
    const auto g = rng.gamma();
    const Operator4 j = build_correlation(g);
    EXPECT_TRUE(j.is_unitary(1e-12));
  }
}

TEST(Operators, CorrelationParamsWrapAndReject) {
  const CorrelationParams g(-kPi / 2, 5 * kPi);
  EXPECT_NEAR(g.gamma1(), 1.5 * kPi, 1e-12);
  EXPECT_NEAR(g.gamma2(), kPi, 1e-12);
  EXPECT_THROW(CorrelationParams(std::nan(""), 0.0), std::invalid_argument);
  EXPECT_THROW(CorrelationParams(0.0, INFINITY), std::invalid_argument);
}

TEST(Operators, StrategyCanonicalGauge) {
  const Complex g = std::polar(1.0, 0.7);
  const auto s = StrategyVector::from_components(g * 0.6, g * std::polar(0.8, 1.1));
  EXPECT_NEAR(s.a0(), 0.6, 1e-15);
  EXPECT_NEAR(s.a1(), 0.8, 1e-15);
  EXPECT_NEAR(s.phase(), 1.1, 1e-15);
  EXPECT_EQ(StrategyVector::from_components(0.0, Complex(0.0, 2.0)).a0(), 0.0);
  EXPECT_THROW(StrategyVector::from_components(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(StrategyVector::from_amplitude(1.5), std::invalid_argument);
  EXPECT_THROW(StrategyVector::basis(2), std::invalid_argument);
}

TEST(Operators, JointStateIsNormalised) {
  Sampler rng(13);
  for (int k = 0; k < 1000; ++k) {
    const auto s = joint_state(rng.strategy(), rng.strategy(), rng.gamma());
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Operators, ExpectationRequiresSelfAdjoint) {
  Operator4 m;
  m(0, 1) = Complex(1.0);
  EXPECT_THROW(expectation(m, JointState::basis(0, 0)), NotSelfAdjoint);
  EXPECT_DOUBLE_EQ(expectation(Operator4::diagonal({1, 2, 3, 4}), JointState::basis(1, 0)), 3.0);
}

TEST(Operators, SwapOfProductStateSwapsFactors) {
  Sampler rng(14);
  for (int k = 0; k < 1000; ++k) {
    const auto a = rng.strategy(), b = rng.strategy();
    const auto swapped = build_swap() * JointState::product(a, b);
    const auto expected = JointState::product(b, a);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(std::abs(swapped.amps[i] - expected.amps[i]), 1e-15);
  }
}

TEST(Operators, PermutationsCommute) {
  const Operator4 s = build_swap(), c = build_conversion(), t = build_T();
  EXPECT_EQ(max_abs_diff(s * t, t * s), 0.0);
  EXPECT_EQ(max_abs_diff(c * t, t * c), 0.0);
  EXPECT_EQ(max_abs_diff(c, t * s), 0.0);
}

TEST(Operators, CorrelationSpecialValues) {
  EXPECT_LE(max_abs_diff(build_correlation({kPi, 0.0}), Complex(0.0, 1.0) * build_swap()), 1e-15);
  Sampler rng(15);
  const Operator4 s = build_swap();
  for (int k = 0; k < 1000; ++k) {
    const Operator4 j = build_correlation(rng.gamma());
    EXPECT_LE(max_abs_diff(j * s, s * j), 1e-12);
  }
}

TEST(Operators, JointStateExamples) {
  const auto s0 = joint_state(StrategyVector::basis(0), StrategyVector::basis(0), {0.0, 0.0});
  EXPECT_EQ(s0(0, 0), Complex(1.0));
  const double g1 = 1.1;
  const auto s = joint_state(StrategyVector::basis(1), StrategyVector::basis(0), {g1, 0.0});
  EXPECT_NEAR(std::abs(s(1, 0) - Complex(std::cos(g1 / 2))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s(0, 1) - Complex(0.0, std::sin(g1 / 2))), 0.0, 1e-15);
}

TEST(Operators, ExpectationExamples) {
  const auto a = Operator4::diagonal({3, 0, 5, 1});
  EXPECT_DOUBLE_EQ(expectation(a, JointState::basis(0, 0)), 3.0);
  JointState bell;
  bell.amps = {0.0, std::sqrt(0.5), std::sqrt(0.5), 0.0};
  EXPECT_NEAR(expectation(a, bell), 2.5, 1e-15);
  Sampler rng(16);
  EXPECT_NEAR(expectation(Operator4::identity(), joint_state(rng.strategy(), rng.strategy(), rng.gamma())),
              1.0, 1e-12);
}
