#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gabdual/constraint.hpp"
#include "gabdual/metrics.hpp"
#include "gabdual/prox.hpp"
#include "gabdual/signal.hpp"

namespace gabdual {

struct SolverConfig {
  /// Prox step.
  double gamma = 1.0;
  int max_iter = 10000;
  /// Stop once ||x_{n+1} - x_n|| <= rel_tol ||x_n||. PPXA additionally needs
  /// every auxiliary update ||y_{i,n+1} - y_{i,n}|| <= sqrt(rel_tol) ||x_n||.
  double rel_tol = 1e-8;
  /// PPXA relaxation lambda_n, constant, in (0, 2).
  double relaxation = 1.0;
  /// PPXA weights, one per prior followed by one for the constraint. Empty
  /// selects uniform weights 1/K.
  std::vector<double> weights;
  /// Inner ADMM steps per outer iteration for S0 priors (warm started).
  int admm_inner_iter = 4;
  /// POCS: per-set distance regarded as zero (relative to ||x||).
  double feasibility_tol = 1e-8;
  std::uint64_t seed = 0;

  void validate(std::size_t terms) const;
};

/// One smooth or nonsmooth term of a PPXA objective.
struct ProxTerm {
  std::string name;
  RealProx prox;                                  // (y, step) -> prox_{step f}(y)
  std::function<double(const RealVector&)> value;  // f(x)
};

/// Wraps a prior; the term refers to the prior, which must outlive it.
ProxTerm make_term(Prior& prior);

struct SolveReport {
  Window solution;
  /// Solution as a length-L circular sequence.
  RealVector circular;
  /// Objective at the projected iterate, one entry per iteration.
  std::vector<double> objective;
  /// Distance of the iterate to the constraint set, one entry per iteration.
  std::vector<double> residual;
  int iterations = 0;
  bool converged = false;
  /// Relative change of the last iteration.
  double last_change = 0.0;
  double wall_time = 0.0;  // seconds
  /// Objective nonincreasing over the last 90% of iterations (slack 1e-9).
  bool monotone = true;
  /// Heuristic solvers (tight design) carry no guarantee.
  bool heuristic = false;
  /// Final distance checks; meaning depends on the driver (WR residual for
  /// duals, frame-bound deviation for tight windows).
  double constraint_residual = 0.0;
  double support_residual = 0.0;
  std::optional<MetricsReport> metrics;
};

/// Parallel proximal algorithm for min sum_i f_i(x) subject to x in C.
///
/// Each term gets its own auxiliary variable y_i; the constraint is the last
/// term, its prox being `constraint`. The final answer is constraint(x).
/// Throws DivergenceError on NaN or infinite iterates.
SolveReport ppxa(std::vector<ProxTerm> terms, const Projection& constraint, const SolverConfig& cfg,
                 const RealVector& x0);
SolveReport ppxa(std::vector<Prior>& priors, const Projection& constraint, const SolverConfig& cfg,
                 const RealVector& x0);

/// Douglas-Rachford splitting for min f(x) subject to x in C.
SolveReport douglas_rachford(const ProxTerm& term, const Projection& constraint, const SolverConfig& cfg,
                             const RealVector& x0);

struct PocsResult {
  RealVector x;
  /// ||x - P_i(x)|| for each set at the returned iterate.
  std::vector<double> residuals;
  /// max_i residuals after each cycle.
  std::vector<double> residual_trace;
  int iterations = 0;
  bool converged = false;
};

/// Cyclic projections x <- P_K(...P_1(x)). Converged means the iterate stopped
/// moving and lies in every set up to feasibility_tol; stagnation away from
/// the intersection (disjoint sets) is returned with converged = false.
PocsResult pocs(const std::vector<Projection>& projections, const SolverConfig& cfg, const RealVector& x0);

/// Optimized dual window: min sum_i f_i(h) over duals of g supported on s.
///
/// The window is periodized to L; the default start is the canonical dual
/// restricted to the support. The report carries the WR residual and the
/// metrics of the solution.
SolveReport design_dual(const Window& g, long a, long M, long L, const SupportSpec& s, std::vector<Prior> priors,
                        const SolverConfig& cfg, std::optional<RealVector> x0 = std::nullopt);

/// Heuristic tight window: PPXA with the Parseval projection as constraint
/// and the support as an extra indicator, followed by POCS between support
/// and Parseval sets and a final Parseval projection. Starts from g0; of the
/// two signs of the result the one closer to g0 is returned.
/// constraint_residual holds max(|A - 1|, |B - 1|) for the frame bounds.
SolveReport design_tight(const Window& g0, long a, long M, long L, const SupportSpec& s, std::vector<Prior> priors,
                         const SolverConfig& cfg);

}  // namespace gabdual
