#pragma once

// Closed-form classification of the quantum Nash equilibria at a given
// (A, gamma). Edge equilibria come from the signs of H+ and H-; the symmetric
// interior solution splits into coherent and phase-scrambled regimes.
// Payoff surfaces over the gamma plane are built on top of this.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qgame/operators.hpp"
#include "qgame/payoff.hpp"

namespace qgame {

/// Declaration order is the tie-break order used by surface selection.
enum class EquilibriumKind {
  Edge00,
  Edge11,
  Edge01,
  Edge10,
  SymmetricCoherent,
  SymmetricPhaseScrambled,
};

inline std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Edge00: return "Edge00";
    case EquilibriumKind::Edge11: return "Edge11";
    case EquilibriumKind::Edge01: return "Edge01";
    case EquilibriumKind::Edge10: return "Edge10";
    case EquilibriumKind::SymmetricCoherent: return "SymmetricCoherent";
    case EquilibriumKind::SymmetricPhaseScrambled: return "SymmetricPhaseScrambled";
  }
  return "Unknown";
}

inline std::optional<EquilibriumKind> kind_from_string(std::string_view s) {
  for (auto k : {EquilibriumKind::Edge00, EquilibriumKind::Edge11, EquilibriumKind::Edge01,
                 EquilibriumKind::Edge10, EquilibriumKind::SymmetricCoherent,
                 EquilibriumKind::SymmetricPhaseScrambled}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline bool is_edge(EquilibriumKind k) {
  return k == EquilibriumKind::Edge00 || k == EquilibriumKind::Edge11 ||
         k == EquilibriumKind::Edge01 || k == EquilibriumKind::Edge10;
}

/// Kinds in which both players use the same strategy.
inline bool is_symmetric(EquilibriumKind k) {
  return k != EquilibriumKind::Edge01 && k != EquilibriumKind::Edge10;
}

struct EquilibriumRecord {
  EquilibriumKind kind = EquilibriumKind::Edge00;
  StrategyVector alpha;
  StrategyVector beta;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  /// Equilibrium phase for SymmetricCoherent records.
  std::optional<double> phase_star;
  /// Set when an equilibrium inequality holds only within the boundary tolerance.
  bool boundary = false;
};

struct EquilibriumReport {
  CorrelationParams gamma;
  GameFunctions functions;
  std::vector<EquilibriumRecord> records;
};

inline constexpr double kDefaultBoundaryTol = 1e-9;

namespace detail {

inline EquilibriumRecord make_edge(EquilibriumKind kind, int i, int j, const PayoffModel& model,
                                   bool boundary) {
  EquilibriumRecord r;
  r.kind = kind;
  r.alpha = StrategyVector::basis(i);
  r.beta = StrategyVector::basis(j);
  r.payoff_a = model(r.alpha, r.beta, Player::A);
  r.payoff_b = model(r.alpha, r.beta, Player::B);
  r.boundary = boundary;
  return r;
}

}  // namespace detail

/// Symmetric edges need H+ > 0 for |0,0> or H- > 0 for |1,1>. The asymmetric
/// pair |0,1>, |1,0> needs both negative. Inequalities are relaxed by `boundary_tol`; records
/// admitted only through the relaxation carry `boundary`.
inline std::vector<EquilibriumRecord> classify_edges(const PayoffMatrix& m,
                                                     const CorrelationParams& gamma,
                                                     double boundary_tol = kDefaultBoundaryTol) {
  if (!(boundary_tol >= 0.0)) throw std::invalid_argument("boundary_tol must be >= 0");
  const PayoffModel model(m, gamma);
  const GameFunctions& f = model.functions();
  const bool hp_edge = std::abs(f.h_plus) <= boundary_tol;
  const bool hm_edge = std::abs(f.h_minus) <= boundary_tol;

  std::vector<EquilibriumRecord> out;
  if (f.h_plus > -boundary_tol) {
    out.push_back(detail::make_edge(EquilibriumKind::Edge00, 0, 0, model, hp_edge));
  }
  if (f.h_minus > -boundary_tol) {
    out.push_back(detail::make_edge(EquilibriumKind::Edge11, 1, 1, model, hm_edge));
  }
  if (f.h_plus < boundary_tol && f.h_minus < boundary_tol) {
    const bool b = hp_edge || hm_edge;
    out.push_back(detail::make_edge(EquilibriumKind::Edge01, 0, 1, model, b));
    out.push_back(detail::make_edge(EquilibriumKind::Edge10, 1, 0, model, b));
  }
  return out;
}

/// Symmetric phase equilibrium xi* in [0, pi) with cos 2xi* = -G-/G+, on the
/// branch where the interference payoff equals +a0 a1 b0 b1 Delta. Absent when
/// |G-| > |G+| or when both G+ and G- vanish.
inline std::optional<double> phase_equilibrium(const GameFunctions& f) {
  if (f.g_plus == 0.0 && f.g_minus == 0.0) return std::nullopt;
  if (std::abs(f.g_minus) > std::abs(f.g_plus)) return std::nullopt;
  const double cos2 = std::clamp(-f.g_minus / f.g_plus, -1.0, 1.0);
  const double sin2 = -std::copysign(f.delta / std::abs(f.g_plus), f.g_plus);
  double xi = 0.5 * std::atan2(sin2, cos2);
  if (xi < 0.0) xi += std::numbers::pi;
  if (xi >= std::numbers::pi) xi -= std::numbers::pi;
  return xi;
}

inline std::optional<double> phase_equilibrium(const PayoffMatrix& m,
                                               const CorrelationParams& gamma) {
  return phase_equilibrium(game_functions(m, gamma));
}

/// Symmetric interior solution a0* = b0* = sqrt((H- - D) / (H+ + H- - 2D)),
/// valid when (H+ - D)(H- - D) >= 0. With D > 0 both players use xi*; with
/// D = 0 phases are scrambled and the interference payoff averages to zero.
inline std::optional<EquilibriumRecord> symmetric_interior(const PayoffMatrix& m,
                                                           const CorrelationParams& gamma) {
  const PayoffModel model(m, gamma);
  const GameFunctions& f = model.functions();
  const double d = f.delta;
  const double num = f.h_minus - d;
  const double den = f.h_plus + f.h_minus - 2.0 * d;
  if ((f.h_plus - d) * (f.h_minus - d) < 0.0 || den == 0.0) return std::nullopt;
  const double x = num / den;
  if (!(x >= 0.0 && x <= 1.0)) return std::nullopt;
  const double a0 = std::sqrt(x);

  EquilibriumRecord r;
  if (d > 0.0) {
    const auto xi = phase_equilibrium(f);
    if (!xi) return std::nullopt;
    r.kind = EquilibriumKind::SymmetricCoherent;
    r.phase_star = *xi;
    r.alpha = StrategyVector::from_amplitude(a0, *xi);
    r.beta = r.alpha;
    r.payoff_a = model(r.alpha, r.beta, Player::A);
    r.payoff_b = model(r.alpha, r.beta, Player::B);
  } else {
    // Equal phases of zero make the interference term vanish identically, so
    // the stored pure profile carries the phase-averaged payoff.
    r.kind = EquilibriumKind::SymmetricPhaseScrambled;
    r.alpha = StrategyVector::from_amplitude(a0, 0.0);
    r.beta = r.alpha;
    r.payoff_a = model.split(r.alpha, r.beta).pseudo_classical;
    r.payoff_b = model.split(r.beta, r.alpha).pseudo_classical;
  }
  return r;
}

inline EquilibriumReport equilibria_at(const PayoffMatrix& m, const CorrelationParams& gamma,
                                       double boundary_tol = kDefaultBoundaryTol) {
  EquilibriumReport rep;
  rep.gamma = gamma;
  rep.functions = game_functions(m, gamma);
  rep.records = classify_edges(m, gamma, boundary_tol);
  if (auto r = symmetric_interior(m, gamma)) rep.records.push_back(*r);
  return rep;
}

struct OptimalEdgeGamma {
  double lambda = 0.0;
  /// (2 arcsin sqrt(lambda), 0), optimal for |1,0>.
  CorrelationParams gamma;
  /// (pi - 2 arcsin sqrt(lambda), pi), optimal for |0,1>.
  CorrelationParams partner;
  /// A01 + A10 - A11.
  double payoff = 0.0;
};

inline OptimalEdgeGamma optimal_edge_gamma(const PayoffMatrix& m) {
  const double span = m.a10 - m.a01;
  if (span == 0.0) throw DomainError("optimal_edge_gamma: A10 == A01");
  const double lambda = (m.a11 - m.a01) / span;
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("optimal_edge_gamma: lambda outside [0, 1]");
  }
  const double g = 2.0 * std::asin(std::sqrt(lambda));
  OptimalEdgeGamma out;
  out.lambda = lambda;
  out.gamma = CorrelationParams(g, 0.0);
  out.partner = CorrelationParams(std::numbers::pi - g, std::numbers::pi);
  out.payoff = m.a01 + m.a10 - m.a11;
  return out;
}

struct PlateauBounds {
  double eta = 0.0;
  /// 2 arcsin sqrt(eta); the plateau on gamma2 = 0 spans [gamma1_lo, pi].
  double gamma1_lo = 0.0;
};

inline PlateauBounds mixed_plateau_bounds(const PayoffMatrix& m) {
  const double span = m.a10 - m.a01;
  if (span == 0.0) throw DomainError("mixed_plateau_bounds: A10 == A01");
  const double eta = (m.a10 - m.a00) / span;
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("mixed_plateau_bounds: eta outside [0, 1]");
  }
  return {eta, 2.0 * std::asin(std::sqrt(eta))};
}

// ---------------------------------------------------------------------------
// Payoff surfaces over the gamma plane.

/// Evenly spaced axis. Closed axes include both ends; periodic axes omit `hi`.
struct GridAxis {
  double lo = 0.0;
  double hi = kTwoPi;
  std::size_t steps = 2;
  bool include_hi = false;

  static GridAxis closed(double lo, double hi, std::size_t steps) {
    return {lo, hi, steps, true};
  }
  static GridAxis periodic(std::size_t steps) { return {0.0, kTwoPi, steps, false}; }

  double value(std::size_t k) const {
    const double n = static_cast<double>(include_hi ? steps - 1 : steps);
    return lo + (hi - lo) * static_cast<double>(k) / n;
  }
};

struct GridSpec {
  GridAxis gamma1;
  GridAxis gamma2;

  std::size_t size() const { return gamma1.steps * gamma2.steps; }
};

enum class Selection {
  /// One row per grid point: the record maximizing payoff_a.
  MaxForA,
  /// One row per grid point: the record maximizing payoff_a among symmetric
  /// equilibria (Edge00, Edge11, interior), the mixed-strategy surface.
  MaxSymmetric,
  /// One row per record.
  AllRecords,
};

struct SurfaceRow {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::optional<EquilibriumKind> kind;
  double a0_star = 0.0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
  double delta = 0.0;
};

struct SurfaceTable {
  GridSpec grid;
  Selection selection = Selection::MaxForA;
  /// Rows ordered gamma1-major, then gamma2.
  std::vector<SurfaceRow> rows;
};

/// Highest payoff_a among records admitted by `pred`; ties resolve to the
/// earliest kind in declaration order.
template <typename Pred>
const EquilibriumRecord* select_max_for_a(const std::vector<EquilibriumRecord>& records,
                                          Pred&& pred) {
  const EquilibriumRecord* best = nullptr;
  for (const auto& r : records) {
    if (!pred(r)) continue;
    if (best == nullptr || r.payoff_a > best->payoff_a ||
        (r.payoff_a == best->payoff_a && r.kind < best->kind)) {
      best = &r;
    }
  }
  return best;
}

namespace detail {

inline std::size_t thread_budget(std::size_t requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("QGAME_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(k) for k in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < n; k += threads) fn(k);
    });
  }
}

inline SurfaceRow make_row(const EquilibriumReport& rep, const EquilibriumRecord* r) {
  SurfaceRow row;
  row.gamma1 = rep.gamma.gamma1();
  row.gamma2 = rep.gamma.gamma2();
  row.h_plus = rep.functions.h_plus;
  row.h_minus = rep.functions.h_minus;
  row.delta = rep.functions.delta;
  if (r != nullptr) {
    row.kind = r->kind;
    row.a0_star = r->alpha.a0();
    row.payoff_a = r->payoff_a;
    row.payoff_b = r->payoff_b;
  } else {
    row.a0_star = row.payoff_a = row.payoff_b = std::nan("");
  }
  return row;
}

}  // namespace detail

/// Evaluates equilibria_at on every grid point. Grid points are processed
/// concurrently; rows are position-addressed so the output is deterministic.
inline SurfaceTable payoff_surface(const PayoffMatrix& m, const GridSpec& grid,
                                   Selection selection, std::size_t threads = 0,
                                   double boundary_tol = kDefaultBoundaryTol) {
  if (grid.gamma1.steps < 2 || grid.gamma2.steps < 2) {
    throw std::invalid_argument("payoff_surface: need at least 2 points per axis");
  }
  const std::size_t n1 = grid.gamma1.steps;
  const std::size_t n2 = grid.gamma2.steps;
  std::vector<std::vector<SurfaceRow>> cells(n1 * n2);

  detail::parallel_for(n1 * n2, detail::thread_budget(threads), [&](std::size_t k) {
    const std::size_t i = k / n2;
    const std::size_t j = k % n2;
    const auto rep = equilibria_at(
        m, CorrelationParams(grid.gamma1.value(i), grid.gamma2.value(j)), boundary_tol);
    auto& cell = cells[k];
    switch (selection) {
      case Selection::MaxForA:
        cell.push_back(detail::make_row(
            rep, select_max_for_a(rep.records, [](const auto&) { return true; })));
        break;
      case Selection::MaxSymmetric:
        cell.push_back(detail::make_row(
            rep, select_max_for_a(rep.records, [](const auto& r) { return is_symmetric(r.kind); })));
        break;
      case Selection::AllRecords:
        for (const auto& r : rep.records) cell.push_back(detail::make_row(rep, &r));
        break;
    }
  });

  SurfaceTable table;
  table.grid = grid;
  table.selection = selection;
  for (auto& cell : cells) {
    for (auto& row : cell) table.rows.push_back(row);
  }
  return table;
}

}  // namespace qgame
