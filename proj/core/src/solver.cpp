#include "gabdual/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace gabdual {
namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

bool finite(const RealVector& x) { return x.allFinite(); }

bool nonincreasing_tail(const std::vector<double>& obj) {
  const std::size_t n = obj.size();
  const std::size_t start = n / 10;
  for (std::size_t k = start + 1; k < n; ++k) {
    const double slack = 1e-9 * std::max(1.0, std::abs(obj[k - 1]));
    if (obj[k] > obj[k - 1] + slack) return false;
  }
  return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> resolve_weights(const SolverConfig& cfg, std::size_t K) {
  if (cfg.weights.empty()) return std::vector<double>(K, 1.0 / static_cast<double>(K));
  return cfg.weights;
}

}  // namespace

void SolverConfig::validate(std::size_t terms) const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("solver: gamma must be positive");
  if (max_iter <= 0) throw InvalidArgument("solver: max_iter must be positive");
  if (!(rel_tol >= 0.0)) throw InvalidArgument("solver: rel_tol must be nonnegative");
  if (!(relaxation > 0.0 && relaxation < 2.0)) throw InvalidArgument("solver: relaxation must lie in (0, 2)");
  if (admm_inner_iter <= 0) throw InvalidArgument("solver: admm_inner_iter must be positive");
  if (!weights.empty()) {
    if (weights.size() != terms) {
      throw InvalidArgument("solver: expected " + std::to_string(terms) + " PPXA weights, got " +
                            std::to_string(weights.size()));
    }
    double sum = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw InvalidArgument("solver: PPXA weights must be positive");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("solver: PPXA weights must sum to 1");
  }
}

ProxTerm make_term(Prior& prior) {
  return {prior.name(), [&prior](const RealVector& y, double step) { return prior.prox(y, step); },
          [&prior](const RealVector& x) { return prior.evaluate(x); }};
}

SolveReport ppxa(std::vector<ProxTerm> terms, const Projection& constraint, const SolverConfig& cfg,
                 const RealVector& x0) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t K = terms.size() + 1;
  cfg.validate(K);
  const std::vector<double> w = resolve_weights(cfg, K);
  const double lambda = cfg.relaxation;

  RealVector x = x0;
  std::vector<RealVector> y(K, x0);
  std::vector<RealVector> p(K);
  SolveReport report;
  report.objective.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 100000)));

  for (int it = 0; it < cfg.max_iter; ++it) {
    for (std::size_t i = 0; i + 1 < K; ++i) p[i] = terms[i].prox(y[i], cfg.gamma / w[i]);
    p[K - 1] = constraint(y[K - 1]);

    RealVector consensus = RealVector::Zero(x.size());
    for (std::size_t i = 0; i < K; ++i) consensus += w[i] * p[i];
    const double scale = std::max(x.norm(), kTiny);
    double aux_change = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const RealVector dy = lambda * (2.0 * consensus - x - p[i]);
      aux_change = std::max(aux_change, dy.norm() / scale);
      y[i] += dy;
    }
    const RealVector step = lambda * (consensus - x);
    const double change = step.norm() / scale;
    x += step;
    if (!finite(x)) throw DivergenceError("PPXA diverged at iteration " + std::to_string(it + 1));

    const RealVector feasible = constraint(x);
    double obj = 0.0;
    for (const ProxTerm& term : terms) obj += term.value(feasible);
    if (!std::isfinite(obj)) throw DivergenceError("PPXA objective is not finite at iteration " + std::to_string(it + 1));
    report.objective.push_back(obj);
    report.residual.push_back((x - feasible).norm());
    report.iterations = it + 1;
    report.last_change = change;
    // x can sit still while a prox maps to zero and the auxiliaries drift.
    if (change <= cfg.rel_tol && aux_change <= std::sqrt(cfg.rel_tol)) {
      report.converged = true;
      break;
    }
  }

  report.circular = constraint(x);
  report.solution = Window::from_circular(report.circular, report.circular.size());
  report.monotone = nonincreasing_tail(report.objective);
  report.wall_time = seconds_since(t0);
  return report;
}

SolveReport ppxa(std::vector<Prior>& priors, const Projection& constraint, const SolverConfig& cfg,
                 const RealVector& x0) {
  std::vector<ProxTerm> terms;
  terms.reserve(priors.size());
  for (Prior& prior : priors) terms.push_back(make_term(prior));
  return ppxa(std::move(terms), constraint, cfg, x0);
}

SolveReport douglas_rachford(const ProxTerm& term, const Projection& constraint, const SolverConfig& cfg,
                             const RealVector& x0) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate(2);
  SolveReport report;
  RealVector z = x0;
  RealVector x = constraint(z);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const RealVector v = term.prox(2.0 * x - z, cfg.gamma);
    const RealVector step = cfg.relaxation * (v - x);
    z += step;
    const RealVector x_new = constraint(z);
    if (!finite(x_new)) throw DivergenceError("Douglas-Rachford diverged at iteration " + std::to_string(it + 1));
    const double change = (x_new - x).norm() / std::max(x.norm(), kTiny);
    x = x_new;
    report.objective.push_back(term.value(x));
    report.residual.push_back((v - x).norm());
    report.iterations = it + 1;
    report.last_change = change;
    if (change <= cfg.rel_tol) {
      report.converged = true;
      break;
    }
  }
  report.circular = x;
  report.solution = Window::from_circular(x, x.size());
  report.monotone = nonincreasing_tail(report.objective);
  report.wall_time = seconds_since(t0);
  return report;
}

PocsResult pocs(const std::vector<Projection>& projections, const SolverConfig& cfg, const RealVector& x0) {
  if (projections.size() < 2) throw InvalidArgument("pocs: needs at least two projections");
  if (cfg.max_iter <= 0) throw InvalidArgument("pocs: max_iter must be positive");
  PocsResult out;
  RealVector x = x0;
  auto residuals = [&](const RealVector& v) {
    std::vector<double> r;
    r.reserve(projections.size());
    for (const Projection& P : projections) r.push_back((v - P(v)).norm());
    return r;
  };
  bool stalled = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const RealVector prev = x;
    for (const Projection& P : projections) x = P(x);
    if (!finite(x)) throw DivergenceError("POCS produced non-finite values");
    out.iterations = it + 1;
    out.residuals = residuals(x);
    out.residual_trace.push_back(*std::max_element(out.residuals.begin(), out.residuals.end()));
    if ((x - prev).norm() <= cfg.rel_tol * std::max(prev.norm(), kTiny)) {
      stalled = true;
      break;
    }
  }
  if (out.residuals.empty()) out.residuals = residuals(x);
  const double tol = cfg.feasibility_tol * std::max(x.norm(), 1.0);
  out.converged = stalled && std::all_of(out.residuals.begin(), out.residuals.end(), [&](double r) { return r <= tol; });
  out.x = std::move(x);
  return out;
}

SolveReport design_dual(const Window& g, long a, long M, long L, const SupportSpec& s, std::vector<Prior> priors,
                        const SolverConfig& cfg, std::optional<RealVector> x0) {
  const GaborParams p(a, M, L);
  s.validate(L);
  const RealVector gL = periodize(g, L);
  const WRSystem wr(gL, p);
  const DualSupportedProjector project(wr, s);

  AdmmConfig admm;
  admm.max_iter = cfg.admm_inner_iter;
  for (Prior& prior : priors) {
    prior.set_admm(admm);
    prior.reset();
  }

  const RealVector start = x0 ? *x0 : project_support(canonical_dual(gL, p), s);
  if (start.size() != L) throw InvalidArgument("design_dual: starting point has the wrong length");

  SolveReport report = ppxa(priors, [&](const RealVector& v) { return project(v); }, cfg, start);
  report.constraint_residual = wr.residual(report.circular);
  report.support_residual = (report.circular - project_support(report.circular, s)).norm();
  report.metrics = full_report(report.circular, s.length());
  return report;
}

SolveReport design_tight(const Window& g0, long a, long M, long L, const SupportSpec& s, std::vector<Prior> priors,
                         const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const GaborParams p(a, M, L);
  s.validate(L);
  const RealVector start = periodize(g0, L);

  AdmmConfig admm;
  admm.max_iter = cfg.admm_inner_iter;
  for (Prior& prior : priors) {
    prior.set_admm(admm);
    prior.reset();
  }

  std::vector<ProxTerm> terms;
  for (Prior& prior : priors) terms.push_back(make_term(prior));
  terms.push_back({"support", [&s](const RealVector& y, double) { return project_support(y, s); },
                   [](const RealVector&) { return 0.0; }});

  const Projection parseval = [&p](const RealVector& v) { return project_parseval(v, p); };
  SolveReport report = ppxa(std::move(terms), parseval, cfg, start);

  const Projection support = [&s](const RealVector& v) { return project_support(v, s); };
  const PocsResult cleanup = pocs({support, parseval}, cfg, report.circular);
  report.circular = parseval(cleanup.x);
  // The Parseval set is symmetric under h -> -h; keep the sign closer to the start.
  if (report.circular.dot(start) < 0.0) report.circular = -report.circular;
  report.solution = Window::from_circular(report.circular, L);

  const FrameBounds fb = FrameOperator(report.circular, p).bounds();
  report.constraint_residual = std::max(std::abs(fb.lower - 1.0), std::abs(fb.upper - 1.0));
  report.support_residual = (report.circular - project_support(report.circular, s)).norm();
  report.converged = report.converged && cleanup.converged;
  report.heuristic = true;
  report.metrics = full_report(report.circular, s.length());
  report.wall_time = seconds_since(t0);
  return report;
}

}  // namespace gabdual
