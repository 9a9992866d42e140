#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <gabdual/constraint.hpp>

#include "oracles.hpp"
#include "random.hpp"

using namespace gabdual;
using testing_support::Rng;

namespace {

// WR equations written out from their definition, real parts stacked over imaginary parts.
oracle::Mat wr_real_matrix(const RealVector& g, long a, long M) {
  const long L = g.size();
  const long rows = a * (L / M);
  oracle::Mat A(2 * rows, L);
  for (long n = 0; n < L / M; ++n) {
    for (long m = 0; m < a; ++m) {
      for (long l = 0; l < L; ++l) {
        const double phase = -2.0 * std::numbers::pi * double(oracle::mod(m * l, a)) / double(a);
        const double v = g[oracle::mod(l - n * M, L)];
        A(m + n * a, l) = v * std::cos(phase);
        A(rows + m + n * a, l) = v * std::sin(phase);
      }
    }
  }
  return A;
}

// argmin ||x - y|| subject to A_s x_s = b, x zero off the support.
RealVector constrained_projection(const RealVector& y, const RealVector& g, long a, long M,
                                  const std::vector<long>& positions) {
  const oracle::Mat A = wr_real_matrix(g, a, M);
  oracle::Vec b = oracle::Vec::Zero(A.rows());
  b[0] = double(a) / double(M);
  oracle::Mat As(A.rows(), long(positions.size()));
  oracle::Vec ys(long(positions.size()));
  for (std::size_t j = 0; j < positions.size(); ++j) {
    As.col(long(j)) = A.col(positions[j]);
    ys[long(j)] = y[positions[j]];
  }
  const oracle::Mat pinv = As.completeOrthogonalDecomposition().pseudoInverse();
  const oracle::Vec xs = ys - pinv * (As * ys - b);
  RealVector out = RealVector::Zero(y.size());
  for (std::size_t j = 0; j < positions.size(); ++j) out[positions[j]] = xs[long(j)];
  return out;
}

RealVector hann(long n, long L) { return periodize(make_window(WindowKind::hann, n), L); }

}  // namespace

TEST(SupportSpec, CenteredRanges) {
  EXPECT_EQ(SupportSpec::centered(5).interval, (IndexInterval{-2, 2}));
  EXPECT_EQ(SupportSpec::centered(4).interval, (IndexInterval{-2, 1}));
  EXPECT_EQ(SupportSpec::full(9).length(), 9);
  EXPECT_THROW(SupportSpec::centered(0), InvalidArgument);
}

TEST(SupportSpec, ValidationAndPositions) {
  const SupportSpec s = SupportSpec::centered(3);
  EXPECT_EQ(s.positions(8), (std::vector<long>{7, 0, 1}));
  EXPECT_THROW(SupportSpec::centered(9).validate(8), InvalidArgument);
  EXPECT_THROW((SupportSpec{{2, 1}}).validate(8), InvalidArgument);
  EXPECT_NO_THROW((SupportSpec{{-4, 3}}).validate(8));
  EXPECT_THROW((SupportSpec{{-4, 4}}).validate(8), InvalidArgument);
}

TEST(ProjectSupport, ZeroesOutsideAndIsIdempotent) {
  Rng rng(50);
  const RealVector y = rng.vector(10);
  const SupportSpec s = SupportSpec::centered(4);
  const RealVector x = project_support(y, s);
  for (long p = 0; p < 10; ++p) {
    const bool inside = s.interval.contains(signed_index(p, 10));
    EXPECT_EQ(x[p], inside ? y[p] : 0.0);
  }
  EXPECT_EQ(project_support(x, s), x);
}

TEST(ProjectDual, ZeroMapsToCanonicalDual) {
  const long a = 4, M = 8, L = 32;
  const RealVector g = hann(12, L);
  const WRSystem wr(g, GaborParams(a, M, L));
  const RealVector x = project_dual(RealVector(RealVector::Zero(L)), wr);
  EXPECT_LT((x - oracle::canonical_dual(g, a, M)).norm(), 1e-12);
}

TEST(ProjectDual, OutputIsDualAndIdempotent) {
  Rng rng(51);
  const long a = 3, M = 6, L = 36;
  const RealVector g = hann(12, L);
  const WRSystem wr(g, GaborParams(a, M, L));
  const RealVector x = project_dual(rng.vector(L), wr);
  EXPECT_LT(oracle::wr_residual(g, x, a, M), 1e-12);
  EXPECT_LT((project_dual(x, wr) - x).norm(), 1e-12);
}

TEST(ProjectDual, ResidualIsOrthogonalToTheAffineSet) {
  Rng rng(52);
  const long a = 4, M = 8, L = 32;
  const RealVector g = hann(16, L);
  const WRSystem wr(g, GaborParams(a, M, L));
  const RealVector y = rng.vector(L);
  const RealVector x = project_dual(y, wr);
  for (int k = 0; k < 20; ++k) {
    const RealVector other = project_dual(rng.vector(L), wr);
    EXPECT_NEAR((y - x).dot(other - x), 0.0, 1e-12);
  }
  EXPECT_LT((x - constrained_projection(y, g, a, M, SupportSpec::full(L).positions(L))).norm(), 1e-10);
}

TEST(ProjectDual, NonFrameIsInfeasible) {
  // a delta window with a = 2 never reaches odd samples
  RealVector g = RealVector::Zero(4);
  g[0] = 1.0;
  const WRSystem wr(g, GaborParams(2, 2, 4));
  EXPECT_THROW(project_dual(RealVector(RealVector::Zero(4)), wr), InfeasibleConstraint);
}

TEST(DualSupportedProjector, MatchesConstrainedLeastSquares) {
  Rng rng(53);
  const long a = 4, M = 8, L = 48;
  const RealVector g = hann(16, L);
  const WRSystem wr(g, GaborParams(a, M, L));
  for (long n : {12L, 16L, 24L}) {
    const SupportSpec s = SupportSpec::centered(n);
    const DualSupportedProjector P(wr, s);
    const RealVector y = rng.vector(L);
    const RealVector x = P(y);
    EXPECT_LT((x - constrained_projection(y, g, a, M, s.positions(L))).norm(), 1e-10) << n;
    EXPECT_LT(oracle::wr_residual(g, x, a, M), 1e-12);
    EXPECT_EQ(project_support(x, s), x);
    EXPECT_LT((P(x) - x).norm(), 1e-12);
    EXPECT_LT(P.consistency(), 1e-12);
  }
}

TEST(DualSupportedProjector, LeastNormIsShortestSupportedDual) {
  Rng rng(54);
  const long a = 4, M = 8, L = 48;
  const RealVector g = hann(16, L);
  const WRSystem wr(g, GaborParams(a, M, L));
  const DualSupportedProjector P(wr, SupportSpec::centered(16));
  const RealVector h0 = P.least_norm();
  for (int k = 0; k < 20; ++k) EXPECT_GE(P(rng.vector(L)).norm(), h0.norm() - 1e-12);
  // With full support the least-norm dual is the canonical dual.
  const DualSupportedProjector full(wr, SupportSpec::full(L));
  EXPECT_LT((full.least_norm() - oracle::canonical_dual(g, a, M)).norm(), 1e-12);
}

TEST(DualSupportedProjector, TooShortSupportIsInfeasible) {
  const long a = 4, M = 8, L = 48;
  const WRSystem wr(hann(16, L), GaborParams(a, M, L));
  EXPECT_THROW(DualSupportedProjector(wr, SupportSpec::centered(2)), InfeasibleConstraint);
  EXPECT_THROW(project_dual_supported(RealVector(RealVector::Zero(L)), wr, SupportSpec::centered(3)),
               InfeasibleConstraint);
  EXPECT_THROW(DualSupportedProjector(wr, SupportSpec::centered(L + 1)), InvalidArgument);
}

TEST(ProjectParseval, MatchesCanonicalTight) {
  Rng rng(55);
  const long a = 3, M = 6, L = 24;
  const GaborParams p(a, M, L);
  const RealVector y = hann(9, L) + 0.1 * rng.vector(L);
  const RealVector t = project_parseval(y, p);
  EXPECT_LT((t - oracle::canonical_tight(y, a, M)).norm(), 1e-12);
  const FrameBounds b = frame_bounds(t, p);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
  // A Parseval window is its own dual and a fixed point.
  EXPECT_LT(oracle::wr_residual(t, t, a, M), 1e-12);
  EXPECT_LT((project_parseval(t, p) - t).norm(), 1e-12);
}

TEST(ProjectParseval, NonFrameThrows) {
  RealVector g = RealVector::Zero(4);
  g[0] = 1.0;
  EXPECT_THROW(project_parseval(g, GaborParams(2, 2, 4)), FrameError);
}

TEST(ProjectSpan, Line) {
  RealVector v(3), y(3);
  v << 1.0, 1.0, 0.0;
  y << 2.0, 0.0, 5.0;
  const RealVector x = project_span(y, v);
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
  EXPECT_EQ(x[2], 0.0);
  EXPECT_THROW(project_span(y, RealVector(RealVector::Zero(3))), InvalidArgument);
  EXPECT_THROW(project_span(y, RealVector(RealVector::Ones(2))), InvalidArgument);
}
