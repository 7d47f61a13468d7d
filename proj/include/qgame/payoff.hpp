#pragma once

// Payoff operators and the closed-form payoff of the two-strategy game.

#include <array>
#include <cmath>
#include <stdexcept>

#include "qgame/operators.hpp"

namespace qgame {

enum class Player { A, B };

/// Classical 2x2 payoff table for player A; player B receives A_ji.
struct PayoffMatrix {
  double a00 = 0.0;
  double a01 = 0.0;
  double a10 = 0.0;
  double a11 = 0.0;

  PayoffMatrix() = default;
  PayoffMatrix(double v00, double v01, double v10, double v11)
      : a00(v00), a01(v01), a10(v10), a11(v11) {
    detail::require_finite(a00, "a00");
    detail::require_finite(a01, "a01");
    detail::require_finite(a10, "a10");
    detail::require_finite(a11, "a11");
  }

  double at(int i, int j) const {
    if (i == 0) return j == 0 ? a00 : a01;
    return j == 0 ? a10 : a11;
  }

  /// diag(a00, a01, a10, a11) in the product basis.
  Operator4 as_operator() const { return Operator4::diagonal({a00, a01, a10, a11}); }

  double max_abs() const {
    return std::max({std::abs(a00), std::abs(a01), std::abs(a10), std::abs(a11)});
  }

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

/// A01 < A11 < A00 < A10.
inline bool is_prisoners_dilemma(const PayoffMatrix& m) {
  return m.a01 < m.a11 && m.a11 < m.a00 && m.a00 < m.a10;
}

/// Scalar functions of (A, gamma) that govern the equilibria.
struct GameFunctions {
  double tau = 0.0;
  double g_plus = 0.0;
  double g_minus = 0.0;
  double gp_plus = 0.0;
  double gp_minus = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
  /// sqrt(G+^2 - G-^2), or 0 when |G-| > |G+|.
  double delta = 0.0;
};

inline GameFunctions game_functions(const PayoffMatrix& m, const CorrelationParams& gamma) {
  GameFunctions f;
  const double g1 = gamma.gamma1();
  const double g2 = gamma.gamma2();
  f.tau = m.a00 - m.a01 - m.a10 + m.a11;
  f.g_plus = (m.a00 - m.a11) * std::sin(g2);
  f.g_minus = (m.a01 - m.a10) * std::sin(g1);
  f.gp_plus = (m.a00 - m.a11) * std::cos(g2);
  f.gp_minus = (m.a01 - m.a10) * std::cos(g1);
  f.h_plus = f.tau + (f.gp_plus + f.gp_minus);
  f.h_minus = f.tau - (f.gp_plus + f.gp_minus);
  const double disc = f.g_plus * f.g_plus - f.g_minus * f.g_minus;
  f.delta = disc >= 0.0 ? std::sqrt(disc) : 0.0;
  return f;
}

/// J^dagger(gamma) X J(gamma) with X = A for player A and X = S A S for B.
inline Operator4 correlated_payoff_operator(const PayoffMatrix& m, const CorrelationParams& gamma,
                                           Player player) {
  const Operator4 j = build_correlation(gamma);
  Operator4 x = m.as_operator();
  if (player == Player::B) {
    const Operator4 s = build_swap();
    x = s * x * s;
  }
  return j.adjoint() * x * j;
}

struct PayoffDecomposition {
  /// cos^2(g1/2) A + (cos^2(g2/2) - cos^2(g1/2)) SAS + sin^2(g2/2) CAC; diagonal.
  Operator4 pseudo_classical;
  /// (i/2) sin g1 [A, S] + (i/2) sin g2 [A, T]; self-adjoint, zero diagonal.
  Operator4 interference;
};

inline PayoffDecomposition decompose(const PayoffMatrix& m, const CorrelationParams& gamma) {
  const Operator4 a = m.as_operator();
  const Operator4 s = build_swap();
  const Operator4 c = build_conversion();
  const Operator4 t = build_T();
  const double g1 = gamma.gamma1();
  const double g2 = gamma.gamma2();
  const double c1 = std::cos(0.5 * g1) * std::cos(0.5 * g1);
  const double c2 = std::cos(0.5 * g2) * std::cos(0.5 * g2);
  const double s2 = std::sin(0.5 * g2) * std::sin(0.5 * g2);

  PayoffDecomposition d;
  d.pseudo_classical = Complex(c1) * a + Complex(c2 - c1) * (s * a * s) + Complex(s2) * (c * a * c);
  d.interference = Complex(0.0, 0.5 * std::sin(g1)) * (a * s - s * a) +
                   Complex(0.0, 0.5 * std::sin(g2)) * (a * t - t * a);
  return d;
}

struct PayoffSplit {
  double pseudo_classical = 0.0;
  double interference = 0.0;
  double total() const { return pseudo_classical + interference; }
};

/// Player A's payoff at fixed (A, gamma), evaluated in closed form. The
/// pseudo-classical table is read off the diagonal of `decompose`.
class PayoffModel {
 public:
  PayoffModel(const PayoffMatrix& m, const CorrelationParams& gamma)
      : functions_(game_functions(m, gamma)) {
    const auto d = decompose(m, gamma).pseudo_classical.real_diagonal();
    pc_ = {{{d[0], d[1]}, {d[2], d[3]}}};
  }

  const GameFunctions& functions() const { return functions_; }

  /// Pseudo-classical entry <i,j| A^pc |i,j>.
  double pc(int i, int j) const { return pc_[i][j]; }

  /// Components of player A's payoff when A plays alpha and B plays beta.
  PayoffSplit split(const StrategyVector& alpha, const StrategyVector& beta) const {
    const double x0 = alpha.a0() * alpha.a0();
    const double x1 = alpha.a1() * alpha.a1();
    const double y0 = beta.a0() * beta.a0();
    const double y1 = beta.a1() * beta.a1();
    PayoffSplit out;
    out.pseudo_classical = x0 * (y0 * pc_[0][0] + y1 * pc_[0][1]) +
                           x1 * (y0 * pc_[1][0] + y1 * pc_[1][1]);
    const double w = alpha.a0() * alpha.a1() * beta.a0() * beta.a1();
    if (w != 0.0) {
      const double xi = alpha.phase();
      const double chi = beta.phase();
      out.interference = -w * (functions_.g_plus * std::sin(xi + chi) +
                               functions_.g_minus * std::sin(xi - chi));
    }
    return out;
  }

  /// Payoff of `player`; B's payoff uses Pi_B(alpha, beta) = Pi_A(beta, alpha).
  double operator()(const StrategyVector& alpha, const StrategyVector& beta,
                    Player player = Player::A) const {
    return player == Player::A ? split(alpha, beta).total() : split(beta, alpha).total();
  }

 private:
  GameFunctions functions_;
  std::array<std::array<double, 2>, 2> pc_{};
};

inline PayoffSplit payoff_components(const PayoffMatrix& m, const CorrelationParams& gamma,
                                     const StrategyVector& alpha, const StrategyVector& beta) {
  return PayoffModel(m, gamma).split(alpha, beta);
}

inline double payoff(const PayoffMatrix& m, const CorrelationParams& gamma,
                     const StrategyVector& alpha, const StrategyVector& beta,
                     Player player) {
  return PayoffModel(m, gamma)(alpha, beta, player);
}

}  // namespace qgame
