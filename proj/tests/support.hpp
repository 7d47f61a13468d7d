#pragma once

#include <numbers>
#include <random>

#include "qgame/qgame.hpp"

namespace qgame::testing {

inline constexpr double kPi = std::numbers::pi;

inline const PayoffMatrix kPd(3.0, 0.0, 5.0, 1.0);
inline const PayoffMatrix kPdLow(3.0, 0.0, 5.0, 0.2);

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double angle() { return uniform(0.0, 2.0 * kPi); }
  PayoffMatrix matrix() { return {uniform(-10, 10), uniform(-10, 10), uniform(-10, 10), uniform(-10, 10)}; }
  CorrelationParams gamma() { return {angle(), angle()}; }
  StrategyVector strategy() { return StrategyVector::from_amplitude(uniform(0.0, 1.0), angle()); }

  std::mt19937_64 rng;
};

/// exp(i M) by scaling and squaring of the Taylor series.
inline Operator4 expm_i(const Operator4& m) {
  const Operator4 x = Complex(0.0, 1.0 / 1024.0) * m;
  Operator4 term = Operator4::identity();
  Operator4 sum = term;
  for (int k = 1; k < 30; ++k) {
    term = Complex(1.0 / k) * (term * x);
    sum += term;
  }
  for (int k = 0; k < 10; ++k) sum = sum * sum;
  return sum;
}

}  // namespace qgame::testing
