#pragma once

// Entanglement of joint strategies and the gamma-averaged payoff operator.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "qgame/operators.hpp"
#include "qgame/payoff.hpp"

namespace qgame {

enum class LogBase { Natural, Two };

enum class Subsystem { A, B };

struct DensityMatrix2 {
  std::array<std::array<Complex, 2>, 2> m{};

  Complex trace() const { return m[0][0] + m[1][1]; }

  /// Eigenvalues (ascending) from trace and determinant.
  std::array<double, 2> eigenvalues() const {
    const double tr = m[0][0].real() + m[1][1].real();
    const double diff = m[0][0].real() - m[1][1].real();
    const double off = std::abs(m[0][1]);
    const double root = std::sqrt(0.25 * diff * diff + off * off);
    return {0.5 * tr - root, 0.5 * tr + root};
  }
};

/// Partial trace of a pure joint state over the other player.
inline DensityMatrix2 reduced_density(const JointState& state, Subsystem keep) {
  DensityMatrix2 rho;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Complex acc{};
      for (int k = 0; k < 2; ++k) {
        acc += keep == Subsystem::A ? state(r, k) * std::conj(state(c, k))
                                    : state(k, r) * std::conj(state(k, c));
      }
      rho.m[r][c] = acc;
    }
  }
  return rho;
}

namespace detail {

inline double xlogx(double x, LogBase base) {
  if (x < 1e-14) return 0.0;
  return base == LogBase::Two ? x * std::log2(x) : x * std::log(x);
}

}  // namespace detail

/// Binary entropy -l log l - (1-l) log(1-l).
inline double entropy_of_lambda(double lambda, LogBase base = LogBase::Natural) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("entropy_of_lambda: lambda must lie in [0, 1]");
  }
  return -detail::xlogx(lambda, base) - detail::xlogx(1.0 - lambda, base);
}

/// Von Neumann entropy of player A's reduced density matrix.
inline double entanglement_entropy(const JointState& state, LogBase base = LogBase::Natural) {
  const auto ev = reduced_density(state, Subsystem::A).eigenvalues();
  double s = 0.0;
  for (double v : ev) s -= detail::xlogx(std::clamp(v, 0.0, 1.0), base);
  return std::max(0.0, s);
}

/// Average of J^dagger(gamma) A J(gamma) over the uniform measure on
/// [0, 2pi)^2, by the periodic trapezoid rule with n_quad nodes per axis.
inline Operator4 moderated_operator(const PayoffMatrix& m, std::size_t n_quad) {
  if (n_quad < 8) throw std::invalid_argument("moderated_operator: n_quad must be >= 8");
  Operator4 sum;
  const double h = kTwoPi / static_cast<double>(n_quad);
  for (std::size_t i = 0; i < n_quad; ++i) {
    for (std::size_t j = 0; j < n_quad; ++j) {
      sum += correlated_payoff_operator(
          m, CorrelationParams(h * static_cast<double>(i), h * static_cast<double>(j)), Player::A);
    }
  }
  const double n = static_cast<double>(n_quad);
  return Complex(1.0 / (n * n)) * sum;
}

/// 1/2 A + 1/2 CAC.
inline Operator4 moderated_closed_form(const PayoffMatrix& m) {
  const Operator4 a = m.as_operator();
  const Operator4 c = build_conversion();
  return Complex(0.5) * a + Complex(0.5) * (c * a * c);
}

}  // namespace qgame
