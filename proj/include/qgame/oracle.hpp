#pragma once

// Brute-force checks that do not use the equilibrium formulas. Grid scans
// test candidate profiles against unilateral deviations and enumerate the
// pure equilibria of the discretized game. Phase best-response dynamics live
// at the end of the file.
//
// Payoffs here are evaluated as <alpha,beta| J^dagger X J |alpha,beta> from the
// operator route, never from the closed-form payoff.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qgame/equilibria.hpp"
#include "qgame/operators.hpp"
#include "qgame/payoff.hpp"

namespace qgame {

class GridTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct GridStrategy {
  std::size_t amp_index = 0;
  std::size_t phase_index = 0;
  StrategyVector strategy;
};

/// Amplitudes a0 in {0, 1/(n_amp-1), ..., 1} times phases {0, 2pi/n_phase, ...}.
/// At a0 = 0 and a0 = 1 the phase has no effect and a single entry is kept.
class StrategyGrid {
 public:
  StrategyGrid(std::size_t n_amp, std::size_t n_phase) : n_amp_(n_amp), n_phase_(n_phase) {
    if (n_amp < 2) throw std::invalid_argument("StrategyGrid: n_amp must be >= 2");
    if (n_phase < 1) throw std::invalid_argument("StrategyGrid: n_phase must be >= 1");
  }

  std::size_t n_amp() const { return n_amp_; }
  std::size_t n_phase() const { return n_phase_; }
  std::size_t nominal_size() const { return n_amp_ * n_phase_; }

  double amp_step() const { return 1.0 / static_cast<double>(n_amp_ - 1); }
  double phase_step() const { return kTwoPi / static_cast<double>(n_phase_); }

  bool is_edge_amp(std::size_t i) const { return i == 0 || i + 1 == n_amp_; }

  double amplitude(std::size_t i) const {
    return i + 1 == n_amp_ ? 1.0 : static_cast<double>(i) * amp_step();
  }
  double phase(std::size_t k) const { return static_cast<double>(k) * phase_step(); }

  std::vector<GridStrategy> strategies() const {
    std::vector<GridStrategy> out;
    for (std::size_t i = 0; i < n_amp_; ++i) {
      const std::size_t np = is_edge_amp(i) ? 1 : n_phase_;
      for (std::size_t k = 0; k < np; ++k) {
        out.push_back({i, k, StrategyVector::from_amplitude(amplitude(i), phase(k))});
      }
    }
    return out;
  }

  /// Grid neighbours: amplitude indices differ by at most one and phase
  /// indices by at most one (cyclically); phase is ignored at edge amplitudes.
  bool adjacent(const GridStrategy& a, const GridStrategy& b) const {
    const std::size_t da = a.amp_index > b.amp_index ? a.amp_index - b.amp_index
                                                     : b.amp_index - a.amp_index;
    if (da > 1) return false;
    if (is_edge_amp(a.amp_index) || is_edge_amp(b.amp_index)) return true;
    const std::size_t dp = (a.phase_index + n_phase_ - b.phase_index) % n_phase_;
    return std::min(dp, n_phase_ - dp) <= 1;
  }

 private:
  std::size_t n_amp_;
  std::size_t n_phase_;
};

/// Whether the opponent plays the stored strategy or the same amplitude with
/// a uniformly random phase (the phase-scrambled mixed strategy).
enum class PhaseMixing { Pure, OpponentUniformPhase };

struct DeviationReport {
  double max_gain_a = 0.0;
  double max_gain_b = 0.0;
  StrategyVector best_deviation_a;
  StrategyVector best_deviation_b;
  double tol = 0.0;
  /// c h^2 with c = max|A_ij| and h the largest grid spacing (amplitude or phase).
  double curvature_allowance = 0.0;
  bool is_nash = false;
};

namespace detail {

/// <v| op |v> without the self-adjointness check; callers validate `op` once.
inline double quadratic_form(const Operator4& op, const JointState& v) {
  Complex acc{};
  for (std::size_t i = 0; i < 4; ++i) {
    Complex row{};
    for (std::size_t j = 0; j < 4; ++j) row += op(i, j) * v.amps[j];
    acc += std::conj(v.amps[i]) * row;
  }
  return acc.real();
}

struct OperatorPayoffs {
  Operator4 op_a;
  Operator4 op_b;

  OperatorPayoffs(const PayoffMatrix& m, const CorrelationParams& gamma)
      : op_a(correlated_payoff_operator(m, gamma, Player::A)),
        op_b(correlated_payoff_operator(m, gamma, Player::B)) {
    if (!op_a.is_self_adjoint() || !op_b.is_self_adjoint()) {
      throw NotSelfAdjoint("correlated payoff operator is not self-adjoint");
    }
  }

  double operator()(const StrategyVector& alpha, const StrategyVector& beta, Player p) const {
    return quadratic_form(p == Player::A ? op_a : op_b, JointState::product(alpha, beta));
  }
};

}  // namespace detail

/// Scans every grid strategy as a unilateral deviation for each player. The
/// candidate itself is always among the deviations, so gains are >= 0.
inline DeviationReport verify_nash(const PayoffMatrix& m, const CorrelationParams& gamma,
                                   const StrategyVector& alpha, const StrategyVector& beta,
                                   const StrategyGrid& grid, double tol = 1e-6,
                                   PhaseMixing mixing = PhaseMixing::Pure) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_nash: tol must be > 0");
  if (grid.nominal_size() < 4) throw std::invalid_argument("verify_nash: grid too small");
  if (mixing == PhaseMixing::OpponentUniformPhase && grid.n_phase() < 2) {
    throw std::invalid_argument("verify_nash: phase averaging needs n_phase >= 2");
  }
  const detail::OperatorPayoffs pay(m, gamma);

  // Payoff of `mover` playing `own` against `other`; with phase mixing the
  // opponent's phase is averaged over the grid phases.
  auto value = [&](Player mover, const StrategyVector& own, const StrategyVector& other) {
    auto eval = [&](const StrategyVector& opp) {
      return mover == Player::A ? pay(own, opp, Player::A) : pay(opp, own, Player::B);
    };
    if (mixing == PhaseMixing::Pure) return eval(other);
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.n_phase(); ++k) {
      acc += eval(StrategyVector::from_amplitude(other.a0(), grid.phase(k)));
    }
    return acc / static_cast<double>(grid.n_phase());
  };

  DeviationReport rep;
  rep.tol = tol;
  const double h = std::max(grid.amp_step(), grid.phase_step());
  rep.curvature_allowance = m.max_abs() * h * h;
  rep.best_deviation_a = alpha;
  rep.best_deviation_b = beta;

  const double base_a = value(Player::A, alpha, beta);
  const double base_b = value(Player::B, beta, alpha);
  for (const auto& g : grid.strategies()) {
    const double ga = value(Player::A, g.strategy, beta) - base_a;
    if (ga > rep.max_gain_a) {
      rep.max_gain_a = ga;
      rep.best_deviation_a = g.strategy;
    }
    const double gb = value(Player::B, g.strategy, alpha) - base_b;
    if (gb > rep.max_gain_b) {
      rep.max_gain_b = gb;
      rep.best_deviation_b = g.strategy;
    }
  }
  const double bound = tol + rep.curvature_allowance;
  rep.is_nash = rep.max_gain_a <= bound && rep.max_gain_b <= bound;
  return rep;
}

/// Checks a classified record; phase-scrambled records are mixed strategies
/// and are verified against an opponent with uniformly random phase.
inline DeviationReport verify_record(const PayoffMatrix& m, const CorrelationParams& gamma,
                                     const EquilibriumRecord& record, const StrategyGrid& grid,
                                     double tol = 1e-6) {
  const auto mixing = record.kind == EquilibriumKind::SymmetricPhaseScrambled
                          ? PhaseMixing::OpponentUniformPhase
                          : PhaseMixing::Pure;
  return verify_nash(m, gamma, record.alpha, record.beta, grid, tol, mixing);
}

struct DiscreteProfile {
  GridStrategy a;
  GridStrategy b;
};

inline constexpr std::size_t kMaxDiscreteStrategies = 10000;

/// All grid profiles from which no unilateral grid deviation gains more than
/// `tol`. Cost is quadratic in the number of grid strategies.
inline std::vector<DiscreteProfile> discrete_equilibria(const PayoffMatrix& m,
                                                        const CorrelationParams& gamma,
                                                        const StrategyGrid& grid,
                                                        double tol = 1e-6,
                                                        std::size_t threads = 0) {
  if (grid.nominal_size() > kMaxDiscreteStrategies) {
    throw GridTooLarge("discrete_equilibria: grid exceeds 10^4 strategies per player");
  }
  const auto strat = grid.strategies();
  const std::size_t n = strat.size();
  const detail::OperatorPayoffs pay(m, gamma);
  const std::size_t workers = detail::thread_budget(threads);

  // Row i is A's strategy, column j is B's.
  std::vector<double> pa(n * n), pb(n * n);
  detail::parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const JointState v = JointState::product(strat[i].strategy, strat[j].strategy);
      pa[i * n + j] = detail::quadratic_form(pay.op_a, v);
      pb[i * n + j] = detail::quadratic_form(pay.op_b, v);
    }
  });

  std::vector<double> best_a(n, -std::numeric_limits<double>::infinity());
  std::vector<double> best_b(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      best_a[j] = std::max(best_a[j], pa[i * n + j]);
      best_b[i] = std::max(best_b[i], pb[i * n + j]);
    }
  }

  std::vector<DiscreteProfile> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pa[i * n + j] >= best_a[j] - tol && pb[i * n + j] >= best_b[i] - tol) {
        out.push_back({strat[i], strat[j]});
      }
    }
  }
  return out;
}

/// Groups profiles into connected components under grid adjacency of both
/// players' strategies.
inline std::vector<std::vector<DiscreteProfile>> cluster_profiles(
    const StrategyGrid& grid, const std::vector<DiscreteProfile>& profiles) {
  const std::size_t n = profiles.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < u; ++v) {
      if (grid.adjacent(profiles[u].a, profiles[v].a) &&
          grid.adjacent(profiles[u].b, profiles[v].b)) {
        parent[find(u)] = find(v);
      }
    }
  }
  std::vector<std::vector<DiscreteProfile>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t r = find(u);
    if (slot[r] == n) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(profiles[u]);
  }
  return groups;
}

namespace detail {

inline double circular_distance(double x, double y) {
  const double d = std::fmod(std::abs(x - y), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace detail

/// Whether a grid profile lies within one grid step of `record`. Amplitudes are
/// compared directly. For coherent records the phases enter the payoff only
/// through xi + chi (weighted by G+) and xi - chi (weighted by G-), so those
/// combinations are compared, each within two phase steps.
inline bool within_one_step(const DiscreteProfile& p, const EquilibriumRecord& record,
                            const GameFunctions& f, const StrategyGrid& grid,
                            double scale = 1.0) {
  constexpr double eps = 1e-12;
  const double ha = grid.amp_step() + eps;
  if (std::abs(p.a.strategy.a0() - record.alpha.a0()) > ha) return false;
  if (std::abs(p.b.strategy.a0() - record.beta.a0()) > ha) return false;
  if (record.kind != EquilibriumKind::SymmetricCoherent) return true;
  if (grid.is_edge_amp(p.a.amp_index) || grid.is_edge_amp(p.b.amp_index)) return true;

  const double hp = 2.0 * grid.phase_step() + eps;
  const double zero = 1e-12 * scale;
  const double xi = p.a.strategy.phase(), chi = p.b.strategy.phase();
  const double rxi = record.alpha.phase(), rchi = record.beta.phase();
  if (std::abs(f.g_plus) > zero && detail::circular_distance(xi + chi, rxi + rchi) > hp) {
    return false;
  }
  if (std::abs(f.g_minus) > zero && detail::circular_distance(xi - chi, rxi - rchi) > hp) {
    return false;
  }
  return true;
}

inline bool cluster_matches(const std::vector<DiscreteProfile>& cluster,
                            const EquilibriumReport& report, const StrategyGrid& grid,
                            double scale = 1.0) {
  for (const auto& p : cluster) {
    for (const auto& r : report.records) {
      if (within_one_step(p, r, report.functions, grid, scale)) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Phase best-response dynamics.

struct PhaseState {
  double xi = 0.0;
  double chi = 0.0;
};

enum class PhaseUpdate {
  /// Players alternate (A first); the mover jumps to its exact best response.
  Alternating,
  /// Both roles share one phase; each step moves it halfway (along the
  /// shorter arc) towards its best response against itself.
  SymmetricRelaxed,
};

/// Interference payoff of player A at phases (xi, chi).
inline double interference_payoff(const GameFunctions& f, double amp_a, double amp_b,
                                  double xi, double chi) {
  const double w = amp_a * std::sqrt(1.0 - amp_a * amp_a) * amp_b *
                   std::sqrt(1.0 - amp_b * amp_b);
  return -w * (f.g_plus * std::sin(xi + chi) + f.g_minus * std::sin(xi - chi));
}

/// Phase maximizing -[G+ sin(x + y) + G- sin(x - y)] for opponent phase y.
/// The maximizer is unique unless the payoff is flat in x, in which case
/// `current` is kept.
inline double best_response_phase(const GameFunctions& f, double y, double current) {
  const double p = (f.g_plus + f.g_minus) * std::cos(y);
  const double q = (f.g_plus - f.g_minus) * std::sin(y);
  const double scale = std::abs(f.g_plus) + std::abs(f.g_minus);
  if (scale == 0.0 || std::hypot(p, q) <= 1e-14 * scale) return current;
  return detail::wrap_angle(std::atan2(-p, -q));
}

/// Trajectory of the phase sub-game with amplitudes held fixed. Entry 0 is
/// `init`; each further entry follows one move.
inline std::vector<PhaseState> phase_dynamics(const PayoffMatrix& m,
                                              const CorrelationParams& gamma, double amp_a,
                                              double amp_b, std::size_t steps, PhaseState init,
                                              PhaseUpdate update = PhaseUpdate::Alternating) {
  if (!(amp_a > 0.0 && amp_a < 1.0 && amp_b > 0.0 && amp_b < 1.0)) {
    throw DomainError("phase_dynamics: amplitudes must lie in (0, 1)");
  }
  if (steps < 1) throw std::invalid_argument("phase_dynamics: steps must be >= 1");
  const GameFunctions f = game_functions(m, gamma);

  std::vector<PhaseState> traj;
  traj.reserve(steps + 1);
  PhaseState s{detail::wrap_angle(init.xi), detail::wrap_angle(init.chi)};
  if (update == PhaseUpdate::SymmetricRelaxed) s.chi = s.xi;
  traj.push_back(s);

  for (std::size_t k = 0; k < steps; ++k) {
    if (update == PhaseUpdate::Alternating) {
      if (k % 2 == 0) {
        s.xi = best_response_phase(f, s.chi, s.xi);
      } else {
        s.chi = best_response_phase(f, s.xi, s.chi);
      }
    } else {
      const double br = best_response_phase(f, s.xi, s.xi);
      double arc = std::remainder(br - s.xi, kTwoPi);
      s.xi = detail::wrap_angle(s.xi + 0.5 * arc);
      s.chi = s.xi;
    }
    traj.push_back(s);
  }
  return traj;
}

}  // namespace qgame
