#include <gtest/gtest.h>

#include "support.hpp"

using namespace qgame;
using namespace qgame::testing;

TEST(Payoff, ClassicalLimitReproducesTable) {
  const CorrelationParams g(0.0, 0.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto a = StrategyVector::basis(i), b = StrategyVector::basis(j);
      EXPECT_DOUBLE_EQ(payoff(kPd, g, a, b, Player::A), kPd.at(i, j));
      EXPECT_DOUBLE_EQ(payoff(kPd, g, a, b, Player::B), kPd.at(j, i));
    }
  }
}

TEST(Payoff, GameFunctionsForPrisonersDilemma) {
  const auto f = game_functions(kPd, {kPi / 2, 0.0});
  EXPECT_DOUBLE_EQ(f.tau, -1.0);
  EXPECT_NEAR(f.g_plus, 0.0, 1e-15);
  EXPECT_NEAR(f.g_minus, -5.0, 1e-15);
  EXPECT_NEAR(f.h_plus, 1.0, 1e-15);
  EXPECT_NEAR(f.h_minus, -3.0, 1e-15);
  EXPECT_EQ(f.delta, 0.0);
  EXPECT_TRUE(is_prisoners_dilemma(kPd));
  EXPECT_FALSE(is_prisoners_dilemma({1, 1, 1, 1}));
}

TEST(Payoff, DecompositionSumsToCorrelatedOperator) {
  Sampler rng(21);
  for (int k = 0; k < 1000; ++k) {
    const auto m = rng.matrix();
    const auto g = rng.gamma();
    const auto d = decompose(m, g);
    EXPECT_LE(max_abs_diff(d.pseudo_classical + d.interference,
                           correlated_payoff_operator(m, g, Player::A)),
              1e-12);
    EXPECT_TRUE(d.pseudo_classical.is_diagonal(1e-12));
    EXPECT_TRUE(d.interference.is_self_adjoint(1e-12));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(std::abs(d.interference(i, i)), 1e-12);
  }
}

TEST(Payoff, ClosedFormMatchesOperatorExpectation) {
  Sampler rng(22);
  const Operator4 s = build_swap();
  for (int k = 0; k < 1000; ++k) {
    const auto m = rng.matrix();
    const auto g = rng.gamma();
    const auto a = rng.strategy(), b = rng.strategy();
    const auto state = joint_state(a, b, g);
    EXPECT_NEAR(payoff(m, g, a, b, Player::A), expectation(m.as_operator(), state), 1e-10);
    // Player B from the swapped operator, not from argument exchange.
    EXPECT_NEAR(payoff(m, g, a, b, Player::B), expectation(s * m.as_operator() * s, state), 1e-10);
    EXPECT_NEAR(payoff(m, g, a, b, Player::B),
                expectation(correlated_payoff_operator(m, g, Player::B),
                            JointState::product(a, b)),
                1e-10);
  }
}

TEST(Payoff, PseudoClassicalDifferencesAreHalfH) {
  Sampler rng(23);
  for (int k = 0; k < 1000; ++k) {
    const auto m = rng.matrix();
    const PayoffModel model(m, rng.gamma());
    const auto& f = model.functions();
    EXPECT_NEAR(model.pc(0, 0) - model.pc(1, 0), 0.5 * f.h_plus, 1e-12);
    EXPECT_NEAR(model.pc(1, 1) - model.pc(0, 1), 0.5 * f.h_minus, 1e-12);
  }
}

TEST(Payoff, SplitSeparatesInterference) {
  const CorrelationParams g(0.8, 1.3);
  const auto a = StrategyVector::from_amplitude(0.6, 0.4);
  const auto b = StrategyVector::from_amplitude(0.3, 2.0);
  const auto sp = payoff_components(kPd, g, a, b);
  const auto d = decompose(kPd, g);
  const auto v = joint_state(a, b, {0.0, 0.0});
  EXPECT_NEAR(sp.pseudo_classical, expectation(d.pseudo_classical, v), 1e-12);
  EXPECT_NEAR(sp.interference, expectation(d.interference, v), 1e-12);
  EXPECT_EQ(payoff_components(kPd, g, StrategyVector::basis(0), b).interference, 0.0);
}

TEST(Payoff, RejectsNonFiniteEntries) {
  EXPECT_THROW(PayoffMatrix(1, std::nan(""), 0, 0), std::invalid_argument);
}

TEST(Payoff, OperatorExamples) {
  EXPECT_EQ(max_abs_diff(correlated_payoff_operator(kPd, {0, 0}, Player::A), kPd.as_operator()), 0.0);
  EXPECT_EQ(max_abs_diff(correlated_payoff_operator(kPd, {0, 0}, Player::B),
                         Operator4::diagonal({3, 5, 0, 1})),
            0.0);
  auto d = decompose(kPd, {0, 0});
  EXPECT_LE(max_abs_diff(d.pseudo_classical, kPd.as_operator()), 1e-15);
  EXPECT_LE(max_abs_diff(d.interference, Operator4{}), 1e-15);
  d = decompose(kPd, {0, kPi});
  // J(0, pi) = iT, so the whole operator is TAT. It reduces to CAC only when
  // A01 = A10.
  const Operator4 t = build_T();
  const Operator4 c = build_conversion();
  EXPECT_LE(max_abs_diff(d.pseudo_classical, t * kPd.as_operator() * t), 1e-15);
  EXPECT_LE(max_abs_diff(d.pseudo_classical, Operator4::diagonal({1, 0, 5, 3})), 1e-15);
  EXPECT_LE(max_abs_diff(d.interference, Operator4{}), 1e-15);
  const PayoffMatrix sym(3, 2, 2, 1);
  EXPECT_LE(max_abs_diff(decompose(sym, {0, kPi}).pseudo_classical, c * sym.as_operator() * c),
            1e-15);
}

TEST(Payoff, GameFunctionExamples) {
  auto f = game_functions(kPd, {0, 0});
  EXPECT_EQ(f.g_plus, 0.0);
  EXPECT_EQ(f.g_minus, 0.0);
  EXPECT_EQ(f.gp_plus, 2.0);
  EXPECT_EQ(f.gp_minus, -5.0);
  EXPECT_EQ(f.h_plus, -4.0);
  EXPECT_EQ(f.h_minus, 2.0);
  EXPECT_NEAR(game_functions(kPd, {0.9273, 0}).h_minus, 0.0, 5e-4);
  f = game_functions(kPdLow, {kPi / 2, kPi / 2});
  EXPECT_NEAR(f.h_plus, f.tau, 1e-15);
  EXPECT_NEAR(f.h_minus, f.tau, 1e-15);
}

TEST(Payoff, OptimumPayoffExample) {
  EXPECT_NEAR(payoff(kPd, {0.9273, 0}, StrategyVector::basis(1), StrategyVector::basis(0), Player::A),
              4.0, 1e-3);
}

TEST(Payoff, SymmetryBoundAndClassicalMixture) {
  Sampler rng(24);
  for (int k = 0; k < 1000; ++k) {
    const auto m = rng.matrix();
    const auto g = rng.gamma();
    const auto a = rng.strategy(), b = rng.strategy();
    EXPECT_NEAR(payoff(m, g, a, b, Player::A), payoff(m, g, b, a, Player::B), 1e-12);
    const auto f = game_functions(m, g);
    const auto sp = payoff_components(m, g, a, b);
    EXPECT_LE(std::abs(sp.interference), 0.25 * (std::abs(f.g_plus) + std::abs(f.g_minus)) + 1e-12);
    EXPECT_NEAR(sp.total(), payoff(m, g, a, b, Player::A), 1e-12);
    double classical = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        classical += std::norm(a.amplitude(i)) * m.at(i, j) * std::norm(b.amplitude(j));
      }
    }
    EXPECT_NEAR(payoff(m, {0, 0}, a, b, Player::A), classical, 1e-12);
    const auto real_a = StrategyVector::from_amplitude(a.a0(), 0.0);
    const auto real_b = StrategyVector::from_amplitude(b.a0(), 0.0);
    EXPECT_EQ(payoff_components(m, g, real_a, real_b).interference, 0.0);
  }
}
