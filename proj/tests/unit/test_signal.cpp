#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <gabdual/signal.hpp>

#include "oracles.hpp"
#include "random.hpp"

using namespace gabdual;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(MakeWindow, ItersinePeakIsOne) {
  const Window w = make_window(WindowKind::itersine, 60);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  EXPECT_EQ(w.length(), 60);
  EXPECT_EQ(w.range().first, -30);
  EXPECT_EQ(w.range().last, 29);
}

TEST(MakeWindow, NuttallPeakIsCoefficientSum) {
  const Window w = make_window(WindowKind::nuttall, 120);
  EXPECT_NEAR(w[0], 0.355768 + 0.487396 + 0.144232 + 0.012604, 1e-15);
  EXPECT_NEAR(w[0], 1.0, 1e-6);
}

TEST(MakeWindow, TukeyFlatTop) {
  const Window w = make_window(WindowKind::tukey, 240, {{"r", 0.6}});
  // |t| <= (1 - r)/2 = 0.2, i.e. |l| <= 48.
  for (long l = -48; l <= 48; ++l) EXPECT_DOUBLE_EQ(w[l], 1.0) << l;
  EXPECT_LT(w[49], 1.0);
  EXPECT_GT(w[49], 0.99);
}

TEST(MakeWindow, TukeyTaperFormula) {
  const double r = 0.6;
  const Window w = make_window(WindowKind::tukey, 240, {{"r", r}});
  for (long l = 49; l < 120; ++l) {
    const double t = l / 240.0;
    EXPECT_NEAR(w[l], 0.5 + 0.5 * std::cos(kPi * (2.0 * t + r - 1.0) / r), 1e-15);
  }
}

TEST(MakeWindow, AllKindsHaveUnitPeakAndEvenSymmetry) {
  const std::pair<WindowKind, WindowParams> kinds[] = {
      {WindowKind::itersine, {}}, {WindowKind::tukey, {{"r", 0.3}}}, {WindowKind::nuttall, {}},
      {WindowKind::hann, {}},     {WindowKind::gaussian, {{"c", 1.0}}}, {WindowKind::rect, {}}};
  for (const auto& [kind, params] : kinds) {
    for (long n : {2L, 7L, 60L, 61L}) {
      const Window w = make_window(kind, n, params);
      EXPECT_NEAR(w[0], 1.0, 1e-6) << to_string(kind);
      EXPECT_TRUE(w.symmetric());
      const IndexInterval r = w.range();
      for (long l = 1; l <= r.last; ++l) EXPECT_NEAR(w[l], w[-l], 1e-15) << to_string(kind) << " n=" << n;
    }
  }
}

TEST(MakeWindow, OddLengthRangeIsAsymmetricByOne) {
  const Window w = make_window(WindowKind::hann, 7);
  EXPECT_EQ(w.range().first, -3);
  EXPECT_EQ(w.range().last, 3);
  const Window v = make_window(WindowKind::hann, 8);
  EXPECT_EQ(v.range().first, -4);
  EXPECT_EQ(v.range().last, 3);
}

TEST(MakeWindow, ValuesOutsideSupportAreZero) {
  const Window w = make_window(WindowKind::hann, 16);
  EXPECT_EQ(w[-8], 0.0);  // t = -1/2
  EXPECT_EQ(w[8], 0.0);   // outside the index range
  EXPECT_EQ(w.support().first, -7);
  EXPECT_EQ(w.support().last, 7);
}

TEST(MakeWindow, ItersineHalfOverlapIsTight) {
  const long Lw = 60;
  const long a = Lw / 2;
  const Window w = make_window(WindowKind::itersine, Lw);
  // Brute-force sum of squared shifts on a long enough stretch.
  std::vector<double> sums;
  for (long l = 0; l < 2 * a; ++l) {
    double s = 0.0;
    for (long n = -4; n <= 4; ++n) s += w[l - n * a] * w[l - n * a];
    sums.push_back(s);
  }
  for (double s : sums) EXPECT_NEAR(s, sums.front(), 1e-12);
}

TEST(MakeWindow, Errors) {
  EXPECT_THROW(make_window(WindowKind::hann, 1), InvalidArgument);
  EXPECT_THROW(make_window(WindowKind::tukey, 16), InvalidArgument);
  EXPECT_THROW(make_window(WindowKind::tukey, 16, {{"r", 1.5}}), InvalidArgument);
  EXPECT_THROW(make_window(WindowKind::gaussian, 16), InvalidArgument);
  EXPECT_THROW(make_window(WindowKind::gaussian, 16, {{"c", 0.0}}), InvalidArgument);
  EXPECT_THROW(parse_window_kind("kaiser"), InvalidArgument);
}

TEST(Periodize, DeltaGivesUnitImpulse) {
  RealVector v = RealVector::Zero(5);
  v[2] = 1.0;  // index 0 of a length-5 range {-2..2}
  const RealVector p = periodize(Window(v), 8);
  RealVector expected = RealVector::Zero(8);
  expected[0] = 1.0;
  EXPECT_EQ(p, expected);
}

TEST(Periodize, OverlappedWrapMatchesTruncatedInfiniteSum) {
  testing_support::Rng rng(1);
  const Window w(rng.vector(6));  // indices -3..2
  const long L = 4;
  const RealVector p = periodize(w, L);
  for (long l = 0; l < L; ++l) {
    double s = 0.0;
    for (long k = -2; k <= 2; ++k) s += w[l - k * L];
    EXPECT_NEAR(p[l], s, 1e-15);
  }
}

TEST(Periodize, SameLengthIsRotationPreservingEnergy) {
  testing_support::Rng rng(2);
  const Window w(rng.vector(9));
  const RealVector p = periodize(w, 9);
  EXPECT_NEAR(p.squaredNorm(), w.values().squaredNorm(), 1e-14);
  for (long l = -4; l <= 4; ++l) EXPECT_EQ(p[wrap_index(l, 9)], w[l]);
}

TEST(Periodize, Linear) {
  testing_support::Rng rng(3);
  const RealVector x = rng.vector(10);
  const RealVector y = rng.vector(10);
  const RealVector lhs = periodize(Window(RealVector(2.0 * x - 3.0 * y)), 6);
  const RealVector rhs = 2.0 * periodize(Window(x), 6) - 3.0 * periodize(Window(y), 6);
  EXPECT_LT((lhs - rhs).norm(), 1e-14);
}

TEST(Periodize, InfinityNormBoundedByL1) {
  testing_support::Rng rng(4);
  const Window w(rng.vector(13));
  const RealVector p = periodize(w, 4);
  EXPECT_LE(p.cwiseAbs().maxCoeff(), w.values().cwiseAbs().sum() + 1e-15);
}

TEST(Dft, DeltaGivesConstantHalf) {
  ComplexVector x = ComplexVector::Zero(4);
  x[0] = 1.0;
  const ComplexVector X = dft(x);
  for (long k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(X[k] - Complex(0.5, 0.0)), 0.0, 1e-15);
}

TEST(Dft, MatchesDirectSum) {
  testing_support::Rng rng(5);
  for (long L : {1L, 2L, 15L, 16L, 90L}) {
    const ComplexVector x = rng.complex_vector(L);
    EXPECT_LT((dft(x) - oracle::dft(x)).norm(), 1e-12 * std::max(1.0, x.norm())) << L;
    EXPECT_LT((idft(x) - oracle::idft(x)).norm(), 1e-12 * std::max(1.0, x.norm())) << L;
  }
}

TEST(Dft, UnitaryAndInverse) {
  testing_support::Rng rng(6);
  for (long L : {16L, 17L, 900L, 4096L}) {
    const ComplexVector x = rng.complex_vector(L);
    const ComplexVector X = dft(x);
    EXPECT_NEAR(X.norm(), x.norm(), 1e-12 * x.norm()) << L;
    EXPECT_LT((idft(X) - x).norm(), 1e-12 * x.norm()) << L;
    EXPECT_LT((dft(idft(x)) - x).norm(), 1e-12 * x.norm()) << L;
  }
}

TEST(GaussGauge, UnitNormAndEven) {
  const RealVector g = gauss_gauge(30);
  EXPECT_NEAR(g.norm(), 1.0, 1e-15);
  for (long p = 1; p < 15; ++p) EXPECT_NEAR(g[p], g[30 - p], 1e-16);
  EXPECT_EQ(g.maxCoeff(), g[0]);
}
