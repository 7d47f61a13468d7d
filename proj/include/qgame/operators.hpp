#pragma once

// Linear algebra on the joint strategy space C^2 (x) C^2.
//
// Basis order is fixed everywhere to |00>, |01>, |10>, |11>, i.e. the flat
// index of |i,j> is 2*i + j, with i the strategy of player A and j the
// strategy of player B.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgame {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance used when checking that an operator is self-adjoint.
inline constexpr double kSelfAdjointTol = 1e-10;
/// Tolerance used for normalization and unitarity checks.
inline constexpr double kNormTol = 1e-12;

class NotSelfAdjoint : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

/// Reduces an angle into [0, 2pi).
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value plus 2pi can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

constexpr std::size_t flat(int i, int j) { return static_cast<std::size_t>(2 * i + j); }

}  // namespace detail

/// Coordinator parameters (gamma1, gamma2), stored in [0, 2pi).
class CorrelationParams {
 public:
  CorrelationParams() = default;
  CorrelationParams(double gamma1, double gamma2) {
    detail::require_finite(gamma1, "gamma1");
    detail::require_finite(gamma2, "gamma2");
    gamma1_ = detail::wrap_angle(gamma1);
    gamma2_ = detail::wrap_angle(gamma2);
  }

  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }

  friend bool operator==(const CorrelationParams&, const CorrelationParams&) = default;

 private:
  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
};

/// One player's strategy (a0, a1 e^{i phase}) with a0, a1 >= 0 and
/// a0^2 + a1^2 = 1. The first amplitude is kept real and non-negative; when it
/// vanishes, `phase` is the phase of the remaining amplitude.
class StrategyVector {
 public:
  StrategyVector() = default;

  /// Strategy with first amplitude `a0` in [0, 1] and relative phase `phase`.
  static StrategyVector from_amplitude(double a0, double phase = 0.0) {
    detail::require_finite(a0, "a0");
    detail::require_finite(phase, "phase");
    if (a0 < 0.0 || a0 > 1.0) {
      throw std::invalid_argument("a0 must lie in [0, 1]");
    }
    StrategyVector s;
    s.a0_ = a0;
    s.a1_ = std::sqrt(std::max(0.0, (1.0 - a0) * (1.0 + a0)));
    s.phase_ = detail::wrap_angle(phase);
    return s;
  }

  /// Canonicalizes an arbitrary non-zero pair of amplitudes: normalizes and
  /// removes the global phase so that the first amplitude is real >= 0.
  static StrategyVector from_components(Complex c0, Complex c1) {
    detail::require_finite(c0.real(), "c0");
    detail::require_finite(c0.imag(), "c0");
    detail::require_finite(c1.real(), "c1");
    detail::require_finite(c1.imag(), "c1");
    const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
    if (norm == 0.0) throw std::invalid_argument("zero strategy vector");
    StrategyVector s;
    const double m0 = std::abs(c0) / norm;
    const double m1 = std::abs(c1) / norm;
    if (m0 == 0.0) {
      s.a0_ = 0.0;
      s.a1_ = 1.0;
      s.phase_ = detail::wrap_angle(std::arg(c1));
      return s;
    }
    s.a0_ = m0;
    s.a1_ = m1;
    s.phase_ = m1 == 0.0 ? 0.0 : detail::wrap_angle(std::arg(c1) - std::arg(c0));
    return s;
  }

  /// Pure basis strategy |k>, k in {0, 1}.
  static StrategyVector basis(int k) {
    if (k != 0 && k != 1) throw std::invalid_argument("basis index must be 0 or 1");
    return from_amplitude(k == 0 ? 1.0 : 0.0);
  }

  double a0() const { return a0_; }
  double a1() const { return a1_; }
  double phase() const { return phase_; }

  Complex amplitude(int k) const {
    return k == 0 ? Complex(a0_, 0.0) : std::polar(a1_, phase_);
  }

 private:
  double a0_ = 1.0;
  double a1_ = 0.0;
  double phase_ = 0.0;
};

/// A vector in the 4-dimensional joint space.
struct JointState {
  std::array<Complex, 4> amps{};

  Complex operator()(int i, int j) const { return amps[detail::flat(i, j)]; }

  double norm_squared() const {
    double n = 0.0;
    for (const auto& a : amps) n += std::norm(a);
    return n;
  }

  /// Separable state |alpha>_A |beta>_B.
  static JointState product(const StrategyVector& alpha, const StrategyVector& beta) {
    JointState s;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        s.amps[detail::flat(i, j)] = alpha.amplitude(i) * beta.amplitude(j);
      }
    }
    return s;
  }

  static JointState basis(int i, int j) {
    JointState s;
    s.amps[detail::flat(i, j)] = 1.0;
    return s;
  }
};

/// Dense 4x4 complex matrix in the product basis.
class Operator4 {
 public:
  using Rows = std::array<std::array<Complex, 4>, 4>;

  Operator4() = default;
  explicit Operator4(const Rows& rows) : m_(rows) {}

  static Operator4 identity() {
    Operator4 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k][k] = 1.0;
    return r;
  }

  static Operator4 diagonal(const std::array<double, 4>& d) {
    Operator4 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k][k] = d[k];
    return r;
  }

  /// Permutation matrix sending basis vector k to basis vector perm[k].
  static Operator4 permutation(const std::array<std::size_t, 4>& perm) {
    Operator4 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[perm[k]][k] = 1.0;
    return r;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return m_[r][c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_[r][c]; }

  Operator4 adjoint() const {
    Operator4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r.m_[i][j] = std::conj(m_[j][i]);
    return r;
  }

  Operator4& operator+=(const Operator4& o) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m_[i][j] += o.m_[i][j];
    return *this;
  }
  Operator4& operator-=(const Operator4& o) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m_[i][j] -= o.m_[i][j];
    return *this;
  }
  Operator4& operator*=(Complex s) {
    for (auto& row : m_)
      for (auto& v : row) v *= s;
    return *this;
  }

  friend Operator4 operator+(Operator4 a, const Operator4& b) { return a += b; }
  friend Operator4 operator-(Operator4 a, const Operator4& b) { return a -= b; }
  friend Operator4 operator*(Complex s, Operator4 a) { return a *= s; }
  friend Operator4 operator*(Operator4 a, Complex s) { return a *= s; }

  friend Operator4 operator*(const Operator4& a, const Operator4& b) {
    Operator4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        const Complex aik = a.m_[i][k];
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < 4; ++j) r.m_[i][j] += aik * b.m_[k][j];
      }
    return r;
  }

  friend JointState operator*(const Operator4& a, const JointState& v) {
    JointState r;
    for (std::size_t i = 0; i < 4; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < 4; ++j) acc += a.m_[i][j] * v.amps[j];
      r.amps[i] = acc;
    }
    return r;
  }

  friend bool operator==(const Operator4&, const Operator4&) = default;

  /// Largest entrywise modulus of (a - b).
  friend double max_abs_diff(const Operator4& a, const Operator4& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a.m_[i][j] - b.m_[i][j]));
    return d;
  }

  bool is_self_adjoint(double tol = kSelfAdjointTol) const {
    return max_abs_diff(*this, adjoint()) <= tol;
  }

  bool is_unitary(double tol = kNormTol) const {
    return max_abs_diff(adjoint() * *this, identity()) <= tol;
  }

  bool is_diagonal(double tol = 0.0) const {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j && std::abs(m_[i][j]) > tol) return false;
    return true;
  }

  std::array<double, 4> real_diagonal() const {
    return {m_[0][0].real(), m_[1][1].real(), m_[2][2].real(), m_[3][3].real()};
  }

 private:
  Rows m_{};
};

/// Swap S|i,j> = |j,i>.
inline Operator4 build_swap() {
  std::array<std::size_t, 4> p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p[detail::flat(i, j)] = detail::flat(j, i);
  return Operator4::permutation(p);
}

/// Conversion C|i,j> = |1-i, 1-j>.
inline Operator4 build_conversion() {
  std::array<std::size_t, 4> p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p[detail::flat(i, j)] = detail::flat(1 - i, 1 - j);
  return Operator4::permutation(p);
}

/// T|i,j> = |1-j, 1-i>, the product of swap and conversion.
inline Operator4 build_T() {
  std::array<std::size_t, 4> p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p[detail::flat(i, j)] = detail::flat(1 - j, 1 - i);
  return Operator4::permutation(p);
}

/// J(gamma) = exp(i gamma1 S / 2) exp(i gamma2 T / 2) with J(0) = I.
/// S^2 = T^2 = I, so each exponential is cos(g/2) I + i sin(g/2) X.
inline Operator4 build_correlation(const CorrelationParams& gamma) {
  const Operator4 id = Operator4::identity();
  const double h1 = 0.5 * gamma.gamma1();
  const double h2 = 0.5 * gamma.gamma2();
  const Operator4 e1 = Complex(std::cos(h1)) * id + Complex(0.0, std::sin(h1)) * build_swap();
  const Operator4 e2 = Complex(std::cos(h2)) * id + Complex(0.0, std::sin(h2)) * build_T();
  return e1 * e2;
}

/// Correlated joint strategy J(gamma) |alpha>|beta>.
inline JointState joint_state(const StrategyVector& alpha, const StrategyVector& beta,
                              const CorrelationParams& gamma) {
  return build_correlation(gamma) * JointState::product(alpha, beta);
}

/// <state| op |state> for a self-adjoint `op`.
inline double expectation(const Operator4& op, const JointState& state) {
  if (!op.is_self_adjoint(kSelfAdjointTol)) {
    throw NotSelfAdjoint("expectation requires a self-adjoint operator");
  }
  const JointState w = op * state;
  Complex acc{};
  for (std::size_t k = 0; k < 4; ++k) acc += std::conj(state.amps[k]) * w.amps[k];
  return acc.real();
}

}  // namespace qgame
