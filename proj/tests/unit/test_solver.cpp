#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include <gabdual/solver.hpp>

#include "oracles.hpp"
#include "random.hpp"

using namespace gabdual;
using testing_support::Rng;

namespace {

ProxTerm distance_to(const RealVector& c) {
  return {"distance", [c](const RealVector& y, double t) { return RealVector((y + t * c) / (1.0 + t)); },
          [c](const RealVector& x) { return 0.5 * (x - c).squaredNorm(); }};
}

Projection hyperplane(const RealVector& n, double offset) {
  return [n, offset](const RealVector& y) { return RealVector(y - ((n.dot(y) - offset) / n.squaredNorm()) * n); };
}

// Equality-constrained quadratic program min x^T Q x subject to A x = b, by a dense KKT solve.
oracle::Vec kkt_minimizer(const oracle::Mat& Q, const oracle::Mat& A, const oracle::Vec& b) {
  const long n = Q.rows();
  const long m = A.rows();
  oracle::Mat K = oracle::Mat::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = 2.0 * Q;
  K.topRightCorner(n, m) = A.transpose();
  K.bottomLeftCorner(m, n) = A;
  oracle::Vec r = oracle::Vec::Zero(n + m);
  r.tail(m) = b;
  return K.completeOrthogonalDecomposition().solve(r).head(n);
}

Window hann(long n) { return make_window(WindowKind::hann, n); }

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate(3));
  cfg.weights = {0.5, 0.5};
  EXPECT_THROW(cfg.validate(3), InvalidArgument);
  cfg.weights = {0.5, 0.25, 0.25};
  EXPECT_NO_THROW(cfg.validate(3));
  cfg.weights = {0.5, 0.5, 0.5};
  EXPECT_THROW(cfg.validate(3), InvalidArgument);
  cfg.weights = {1.0, 0.0, 0.0};
  EXPECT_THROW(cfg.validate(3), InvalidArgument);
  cfg = SolverConfig{};
  cfg.relaxation = 2.0;
  EXPECT_THROW(cfg.validate(2), InvalidArgument);
  cfg = SolverConfig{};
  cfg.gamma = 0.0;
  EXPECT_THROW(cfg.validate(2), InvalidArgument);
  cfg = SolverConfig{};
  cfg.max_iter = 0;
  EXPECT_THROW(cfg.validate(2), InvalidArgument);
}

TEST(Ppxa, NearestPointOfAnAffineSet) {
  Rng rng(60);
  const long n = 6;
  const RealVector c = rng.vector(n);
  const RealVector normal = rng.vector(n);
  const Projection C = hyperplane(normal, 0.7);
  SolverConfig cfg;
  cfg.rel_tol = 1e-13;
  const SolveReport r = ppxa({distance_to(c)}, C, cfg, RealVector(RealVector::Zero(n)));
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.circular - C(c)).norm(), 1e-10);
  EXPECT_EQ(static_cast<int>(r.objective.size()), r.iterations);
  EXPECT_EQ(r.residual.size(), r.objective.size());
  EXPECT_LE(r.last_change, cfg.rel_tol);
}

TEST(Ppxa, WeightsAndRelaxationReachTheSameMinimizer) {
  Rng rng(61);
  const long n = 5;
  const RealVector c1 = rng.vector(n);
  const RealVector c2 = rng.vector(n);
  const RealVector normal = rng.vector(n);
  const Projection C = hyperplane(normal, -0.2);
  // The minimizer of the two distances on the plane is the projection of their midpoint.
  const RealVector expected = C(0.5 * (c1 + c2));
  for (double relax : {0.5, 1.0, 1.8}) {
    for (std::vector<double> w : {std::vector<double>{}, std::vector<double>{0.2, 0.3, 0.5}}) {
      SolverConfig cfg;
      cfg.rel_tol = 1e-13;
      cfg.max_iter = 100000;
      cfg.relaxation = relax;
      cfg.weights = w;
      const SolveReport r = ppxa({distance_to(c1), distance_to(c2)}, C, cfg, RealVector(RealVector::Zero(n)));
      EXPECT_LT((r.circular - expected).norm(), 1e-9) << relax;
    }
  }
}

TEST(Ppxa, NanIterateThrows) {
  const ProxTerm bad{"nan",
                     [](const RealVector& y, double) {
                       return RealVector(RealVector::Constant(y.size(), std::numeric_limits<double>::quiet_NaN()));
                     },
                     [](const RealVector&) { return 0.0; }};
  const Projection id = [](const RealVector& y) { return y; };
  EXPECT_THROW(ppxa({bad}, id, SolverConfig{}, RealVector(RealVector::Ones(3))), DivergenceError);
}

TEST(Ppxa, StopsAtIterationCap) {
  Rng rng(62);
  const RealVector c = rng.vector(4);
  SolverConfig cfg;
  cfg.max_iter = 3;
  cfg.rel_tol = 0.0;
  const SolveReport r = ppxa({distance_to(c)}, hyperplane(rng.vector(4), 1.0), cfg, RealVector(RealVector::Zero(4)));
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(DouglasRachford, NearestPointOfAnAffineSet) {
  Rng rng(63);
  const RealVector c = rng.vector(6);
  const Projection C = hyperplane(rng.vector(6), 0.3);
  SolverConfig cfg;
  cfg.rel_tol = 1e-14;
  const SolveReport r = douglas_rachford(distance_to(c), C, cfg, RealVector(RealVector::Zero(6)));
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.circular - C(c)).norm(), 1e-10);
  EXPECT_TRUE(r.monotone);
}

TEST(Pocs, IntersectingHyperplanes) {
  RealVector n1(2), n2(2);
  n1 << 1.0, 0.0;
  n2 << 1.0, 1.0;
  SolverConfig cfg;
  cfg.rel_tol = 1e-15;
  cfg.max_iter = 10000;
  const PocsResult r = pocs({hyperplane(n1, 1.0), hyperplane(n2, 3.0)}, cfg, RealVector(RealVector::Zero(2)));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 2.0, 1e-12);
  EXPECT_EQ(r.residuals.size(), 2u);
  EXPECT_EQ(static_cast<int>(r.residual_trace.size()), r.iterations);
}

TEST(Pocs, DisjointSetsDoNotConverge) {
  RealVector n(2);
  n << 0.0, 1.0;
  SolverConfig cfg;
  cfg.rel_tol = 1e-14;
  const PocsResult r = pocs({hyperplane(n, 0.0), hyperplane(n, 1.0)}, cfg, RealVector(RealVector::Zero(2)));
  EXPECT_FALSE(r.converged);
  EXPECT_NEAR(r.residuals[1], 0.0, 1e-15);
  EXPECT_NEAR(r.residuals[0], 1.0, 1e-12);
  EXPECT_THROW(pocs({hyperplane(n, 0.0)}, cfg, RealVector(RealVector::Zero(2))), InvalidArgument);
}

TEST(DesignDual, EnergyPriorGivesLeastNormSupportedDual) {
  const long a = 4, M = 8, L = 48, n = 16;
  const Window g = hann(16);
  const SupportSpec s = SupportSpec::centered(n);
  SolverConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_iter = 50000;
  const SolveReport r = design_dual(g, a, M, L, s, {Prior(PriorKind::l2, Domain::time, 1.0)}, cfg);
  const DualSupportedProjector P(WRSystem(periodize(g, L), GaborParams(a, M, L)), s);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.circular - P.least_norm()).norm(), 1e-8);
  EXPECT_LT(r.constraint_residual, 1e-12);
  EXPECT_EQ(r.support_residual, 0.0);
  ASSERT_TRUE(r.metrics.has_value());
  EXPECT_NEAR(r.metrics->l2, r.circular.norm(), 1e-14);
}

TEST(DesignDual, GradientPriorMatchesKktSolution) {
  const long a = 4, M = 8, L = 32, n = 16;
  const Window g = hann(16);
  const RealVector gL = periodize(g, L);
  const SupportSpec s = SupportSpec::centered(n);
  SolverConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_iter = 100000;
  const SolveReport r = design_dual(g, a, M, L, s, {Prior(PriorKind::grad, Domain::time, 1.0)}, cfg);

  // Oracle: restrict the WR equations and the difference Gram to the support.
  const std::vector<long> pos = s.positions(L);
  const long k = static_cast<long>(pos.size());
  const oracle::Mat D = oracle::difference_gram(L);
  const WRSystem wr(gL, GaborParams(a, M, L));
  oracle::Mat Q(k, k), A(wr.matrix().rows(), k);
  for (long i = 0; i < k; ++i) {
    A.col(i) = wr.matrix().col(pos[i]);
    for (long j = 0; j < k; ++j) Q(i, j) = D(pos[i], pos[j]);
  }
  const oracle::Vec xs = kkt_minimizer(Q, A, wr.rhs());
  RealVector expected = RealVector::Zero(L);
  for (long i = 0; i < k; ++i) expected[pos[i]] = xs[i];
  EXPECT_LT(oracle::wr_residual(gL, expected, a, M), 1e-10);
  EXPECT_LT((r.circular - expected).norm(), 1e-6 * expected.norm());
  EXPECT_LE(oracle::gradient_energy(r.circular.cast<Complex>()),
            oracle::gradient_energy(expected.cast<Complex>()) * (1.0 + 1e-9));
  EXPECT_TRUE(r.monotone);
}

TEST(DesignDual, SupportedDualWithNonsmoothPriors) {
  const long a = 4, M = 8, L = 48;
  const Window g = hann(16);
  const SupportSpec s = SupportSpec::centered(40);
  SolverConfig cfg;
  cfg.gamma = 0.05;
  cfg.rel_tol = 1e-7;
  std::vector<Prior> priors{Prior(PriorKind::l1, Domain::time, 1.0), Prior(PriorKind::s0, Domain::time, 0.1)};
  const SolveReport r = design_dual(g, a, M, L, s, priors, cfg);
  EXPECT_LT(oracle::wr_residual(periodize(g, L), r.circular, a, M), 1e-12);
  EXPECT_EQ(project_support(r.circular, s), r.circular);
  // The optimized dual beats the truncated canonical dual on the objective.
  const RealVector start = DualSupportedProjector(WRSystem(periodize(g, L), GaborParams(a, M, L)), s)(
      project_support(canonical_dual(periodize(g, L), GaborParams(a, M, L)), s));
  double f_start = 0.0, f_end = 0.0;
  for (Prior& p : priors) {
    f_start += p.evaluate(start);
    f_end += p.evaluate(r.circular);
  }
  EXPECT_LT(f_end, f_start);
}

TEST(DesignDual, Deterministic) {
  const Window g = hann(16);
  SolverConfig cfg;
  cfg.gamma = 0.05;
  cfg.max_iter = 200;
  auto run = [&] {
    return design_dual(g, 4, 8, 48, SupportSpec::centered(24),
                       {Prior(PriorKind::s0_weighted, Domain::time, 1.0), Prior(PriorKind::grad, Domain::frequency, 1.0)},
                       cfg);
  };
  const SolveReport r1 = run();
  const SolveReport r2 = run();
  EXPECT_EQ(r1.circular, r2.circular);
  EXPECT_EQ(r1.objective, r2.objective);
}

TEST(DesignDual, InfeasibleSupportThrows) {
  EXPECT_THROW(design_dual(hann(16), 4, 8, 48, SupportSpec::centered(2), {Prior(PriorKind::l2, Domain::time, 1.0)},
                           SolverConfig{}),
               InfeasibleConstraint);
}

TEST(DesignTight, ParsevalWindowOnTheSupport) {
  const long a = 8, M = 16, L = 64;
  const SupportSpec s = SupportSpec::centered(32);
  SolverConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.max_iter = 20000;
  const SolveReport r = design_tight(make_window(WindowKind::itersine, 16), a, M, L, s,
                                     {Prior(PriorKind::grad, Domain::frequency, 1.0)}, cfg);
  EXPECT_TRUE(r.heuristic);
  EXPECT_LT(r.constraint_residual, 1e-10);
  const FrameBounds b = frame_bounds(r.circular, GaborParams(a, M, L));
  EXPECT_NEAR(b.lower, 1.0, 1e-10);
  EXPECT_NEAR(b.upper, 1.0, 1e-10);
  EXPECT_LT(r.support_residual, 1e-6);
  EXPECT_LT(oracle::wr_residual(r.circular, r.circular, a, M), 1e-10);
}

TEST(DesignTight, ParsevalStartIsAFixedPoint) {
  const long a = 30, M = 60, L = 240;
  const Window g0(RealVector(make_window(WindowKind::itersine, 60).values() / std::sqrt(double(M))), true);
  const RealVector g0L = periodize(g0, L);
  ASSERT_LT((project_parseval(g0L, GaborParams(a, M, L)) - g0L).norm(), 1e-12);
  const SolveReport r = design_tight(g0, a, M, L, SupportSpec::centered(120), {}, SolverConfig{});
  EXPECT_LT((r.circular - g0L).norm(), 1e-8);
  EXPECT_NEAR(r.circular.squaredNorm(), double(a) / double(M), 1e-8);
  // An unnormalized start converges to the scaled window with the same sign.
  const SolveReport u = design_tight(make_window(WindowKind::itersine, 60), a, M, L, SupportSpec::centered(120), {},
                                     SolverConfig{});
  EXPECT_LT((u.circular - g0L).norm(), 1e-8);
}

TEST(DesignTight, ParsevalNormIsRedundancyInverse) {
  const long a = 8, M = 16, L = 64;
  SolverConfig cfg;
  cfg.max_iter = 2000;
  const SolveReport r = design_tight(make_window(WindowKind::hann, 16), a, M, L, SupportSpec::centered(32),
                                     {Prior(PriorKind::grad, Domain::time, 1.0)}, cfg);
  EXPECT_NEAR(r.circular.squaredNorm(), double(a) / double(M), 1e-8);
}

TEST(DesignDual, MetricsAgreeWithMinimizedObjective) {
  SolverConfig cfg;
  cfg.max_iter = 3000;
  const SolveReport r = design_dual(hann(16), 4, 8, 48, SupportSpec::centered(24),
                                    {Prior(PriorKind::grad, Domain::time, 1.0)}, cfg);
  ASSERT_TRUE(r.metrics.has_value());
  EXPECT_NEAR(r.metrics->grad_time * r.metrics->grad_time, r.objective.back(), 1e-12);
}
