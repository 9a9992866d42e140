#include "gabdual/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "gabdual/fft.hpp"

namespace gabdual {
namespace {

std::span<Complex> view(ComplexVector& v) { return {v.data(), static_cast<size_t>(v.size())}; }

void check_length(long n, const GaborParams& p, const char* what) {
  if (n != p.L()) {
    throw InvalidArgument(std::string(what) + ": length " + std::to_string(n) +
                          " does not match L = " + std::to_string(p.L()));
  }
}

}  // namespace

GaborParams::GaborParams(long a, long M, long L) : a_(a), M_(M), L_(L) {
  if (a < 1 || M < 1 || L < 1) throw InvalidArgument("GaborParams: a, M and L must be positive");
  if (L % a != 0) throw InvalidArgument("GaborParams: a = " + std::to_string(a) + " does not divide L = " + std::to_string(L));
  if (L % M != 0) throw InvalidArgument("GaborParams: M = " + std::to_string(M) + " does not divide L = " + std::to_string(L));
}

Coefficients analyze(const ComplexVector& g, const GaborParams& p, const ComplexVector& f) {
  check_length(g.size(), p, "analyze(window)");
  check_length(f.size(), p, "analyze(signal)");
  const long L = p.L();
  const long M = p.M();
  const long N = p.frames();
  Coefficients c(M, N);
  ComplexVector folded(M);
  ComplexVector spectrum(M);
  for (long n = 0; n < N; ++n) {
    folded.setZero();
    const long shift = n * p.a();
    for (long l = 0; l < L; ++l) {
      folded[l % M] += f[l] * std::conj(g[wrap_index(l - shift, L)]);
    }
    fft::forward(view(folded), view(spectrum));
    c.col(n) = spectrum;
  }
  return c;
}

Coefficients analyze(const RealVector& g, const GaborParams& p, const ComplexVector& f) {
  return analyze(ComplexVector(g.cast<Complex>()), p, f);
}

ComplexVector synthesize(const ComplexVector& h, const GaborParams& p, const Coefficients& c) {
  check_length(h.size(), p, "synthesize(window)");
  if (c.rows() != p.M() || c.cols() != p.frames()) {
    throw InvalidArgument("synthesize: coefficient dimensions do not match the lattice");
  }
  const long L = p.L();
  const long M = p.M();
  ComplexVector f = ComplexVector::Zero(L);
  ComplexVector column(M);
  ComplexVector periodic(M);
  for (long n = 0; n < p.frames(); ++n) {
    column = c.col(n);
    fft::backward(view(column), view(periodic));
    const long shift = n * p.a();
    for (long l = 0; l < L; ++l) f[l] += h[wrap_index(l - shift, L)] * periodic[l % M];
  }
  return f;
}

ComplexVector synthesize(const RealVector& h, const GaborParams& p, const Coefficients& c) {
  return synthesize(ComplexVector(h.cast<Complex>()), p, c);
}

// ---------------------------------------------------------------------------

FullStft::FullStft(RealVector g) : g_(std::move(g)) {
  if (g_.size() < 1) throw InvalidArgument("FullStft: empty window");
}

ComplexMatrix FullStft::forward(const RealVector& x) const {
  ComplexMatrix out;
  forward(x, out);
  return out;
}

void FullStft::forward(const RealVector& x, ComplexMatrix& out) const {
  const long L = length();
  if (x.size() != L) throw InvalidArgument("FullStft::forward: length mismatch");
  ComplexMatrix half;
  forward_half(x, half);
  out.resize(L, L);
  const long H = half_rows();
  out.topRows(H) = half;
  for (long m = H; m < L; ++m) out.row(m) = half.row(L - m).conjugate();
}

namespace {

// buffer[l] = x[l] g[l - n] without reducing every index modulo L.
void modulate_window(const RealVector& x, const RealVector& g, long n, RealVector& buffer) {
  const long L = x.size();
  for (long l = 0; l < n; ++l) buffer[l] = x[l] * g[l - n + L];
  for (long l = n; l < L; ++l) buffer[l] = x[l] * g[l - n];
}

}  // namespace

void FullStft::forward_half(const RealVector& x, ComplexMatrix& out) const {
  const long L = length();
  if (x.size() != L) throw InvalidArgument("FullStft::forward_half: length mismatch");
  const long H = half_rows();
  out.resize(H, L);
  RealVector buffer(L);
  for (long n = 0; n < L; ++n) {
    modulate_window(x, g_, n, buffer);
    fft::forward_real({buffer.data(), static_cast<size_t>(L)}, {out.col(n).data(), static_cast<size_t>(H)});
  }
}

void FullStft::adjoint_half(const ComplexMatrix& c, RealVector& out) const {
  const long L = length();
  const long H = half_rows();
  if (c.rows() != H || c.cols() != L) throw InvalidArgument("FullStft::adjoint_half: dimension mismatch");
  out = RealVector::Zero(L);
  RealVector buffer(L);
  for (long n = 0; n < L; ++n) {
    fft::backward_real({c.col(n).data(), static_cast<size_t>(H)}, {buffer.data(), static_cast<size_t>(L)});
    for (long l = 0; l < n; ++l) out[l] += g_[l - n + L] * buffer[l];
    for (long l = n; l < L; ++l) out[l] += g_[l - n] * buffer[l];
  }
}

double FullStft::row_multiplicity(long m) const {
  const long L = length();
  return (m == 0 || 2 * m == L) ? 1.0 : 2.0;
}

RealVector FullStft::adjoint(const ComplexMatrix& c) const {
  const long L = length();
  if (c.rows() != L || c.cols() != L) throw InvalidArgument("FullStft::adjoint: dimension mismatch");
  RealVector out = RealVector::Zero(L);
  ComplexVector buffer(L);
  for (long n = 0; n < L; ++n) {
    fft::backward({c.col(n).data(), static_cast<size_t>(L)}, view(buffer));
    for (long l = 0; l < L; ++l) out[l] += g_[wrap_index(l - n, L)] * buffer[l].real();
  }
  return out;
}

// ---------------------------------------------------------------------------

FrameOperator::FrameOperator(const RealVector& g, const GaborParams& p) : params_(p) {
  check_length(g.size(), p, "FrameOperator");
  const long L = p.L();
  const long M = p.M();
  const long Q = L / M;
  const long N = p.frames();
  eigenvalues_.reserve(M);
  eigenvectors_.reserve(M);
  RealMatrix block(Q, Q);
  for (long r = 0; r < M; ++r) {
    block.setZero();
    for (long n = 0; n < N; ++n) {
      const long shift = n * p.a();
      for (long j = 0; j < Q; ++j) {
        const double gj = g[wrap_index(r + j * M - shift, L)];
        if (gj == 0.0) continue;
        for (long k = 0; k < Q; ++k) block(j, k) += gj * g[wrap_index(r + k * M - shift, L)];
      }
    }
    block *= static_cast<double>(M);
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(block);
    eigenvalues_.push_back(eig.eigenvalues());
    eigenvectors_.push_back(eig.eigenvectors());
  }
}

FrameBounds FrameOperator::bounds() const {
  FrameBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& ev : eigenvalues_) {
    b.lower = std::min(b.lower, ev.minCoeff());
    b.upper = std::max(b.upper, ev.maxCoeff());
  }
  b.lower = std::max(b.lower, 0.0);
  return b;
}

RealMatrix FrameOperator::dense() const {
  const long L = params_.L();
  const long M = params_.M();
  const long Q = L / M;
  RealMatrix S = RealMatrix::Zero(L, L);
  for (long r = 0; r < M; ++r) {
    const RealMatrix block = eigenvectors_[r] * eigenvalues_[r].asDiagonal() * eigenvectors_[r].transpose();
    for (long j = 0; j < Q; ++j)
      for (long k = 0; k < Q; ++k) S(r + j * M, r + k * M) = block(j, k);
  }
  return S;
}

void FrameOperator::require_frame(const char* what) const {
  const FrameBounds b = bounds();
  if (!(b.upper > 0.0) || b.lower <= kSingularFrameTolerance * b.upper) {
    throw FrameError(std::string(what) + ": window does not generate a frame (A = " + std::to_string(b.lower) +
                     ", B = " + std::to_string(b.upper) + ")");
  }
}

RealVector FrameOperator::apply_power(const RealVector& x, Power power) const {
  check_length(x.size(), params_, "FrameOperator");
  const long L = params_.L();
  const long M = params_.M();
  const long Q = L / M;
  RealVector out(L);
  RealVector local(Q);
  for (long r = 0; r < M; ++r) {
    for (long j = 0; j < Q; ++j) local[j] = x[r + j * M];
    RealVector coeff = eigenvectors_[r].transpose() * local;
    const RealVector& ev = eigenvalues_[r];
    for (long j = 0; j < Q; ++j) {
      switch (power) {
        case Power::one: coeff[j] *= ev[j]; break;
        case Power::minus_one: coeff[j] /= ev[j]; break;
        case Power::minus_half: coeff[j] /= std::sqrt(ev[j]); break;
      }
    }
    local = eigenvectors_[r] * coeff;
    for (long j = 0; j < Q; ++j) out[r + j * M] = local[j];
  }
  return out;
}

RealVector FrameOperator::apply(const RealVector& x) const { return apply_power(x, Power::one); }

RealVector FrameOperator::solve(const RealVector& x) const {
  require_frame("FrameOperator::solve");
  return apply_power(x, Power::minus_one);
}

RealVector FrameOperator::inverse_sqrt(const RealVector& x) const {
  require_frame("FrameOperator::inverse_sqrt");
  return apply_power(x, Power::minus_half);
}

RealMatrix frame_operator_dense(const RealVector& g, const GaborParams& p) {
  check_length(g.size(), p, "frame_operator_dense");
  const long L = p.L();
  const long M = p.M();
  RealMatrix S = RealMatrix::Zero(L, L);
  for (long n = 0; n < p.frames(); ++n) {
    const long shift = n * p.a();
    for (long l = 0; l < L; ++l) {
      const double gl = g[wrap_index(l - shift, L)];
      if (gl == 0.0) continue;
      for (long k = l % M; k < L; k += M) S(l, k) += gl * g[wrap_index(k - shift, L)];
    }
  }
  return S * static_cast<double>(M);
}

FrameBounds frame_bounds(const RealVector& g, const GaborParams& p) {
  const RealMatrix S = frame_operator_dense(g, p);
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(S, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();
  return {std::max(ev.minCoeff(), 0.0), std::max(ev.maxCoeff(), 0.0)};
}

RealVector canonical_dual(const RealVector& g, const GaborParams& p) {
  return FrameOperator(g, p).solve(g);
}

RealVector canonical_tight(const RealVector& g, const GaborParams& p) {
  return FrameOperator(g, p).inverse_sqrt(g);
}

// ---------------------------------------------------------------------------

WRSystem::WRSystem(const RealVector& g, const GaborParams& p) : params_(p), g_(g) {
  check_length(g.size(), p, "WRSystem");
  const long L = p.L();
  const long a = p.a();
  const long M = p.M();
  const long rows = a * (L / M);
  complex_.resize(rows, L);
  for (long n = 0; n < L / M; ++n) {
    for (long m = 0; m < a; ++m) {
      const long row = m + n * a;
      for (long l = 0; l < L; ++l) {
        // Phase reduced modulo a before scaling keeps the exponent exact.
        const double phase = -2.0 * std::numbers::pi * static_cast<double>((m * l) % a) / static_cast<double>(a);
        complex_(row, l) = g[wrap_index(l - n * M, L)] * std::polar(1.0, phase);
      }
    }
  }
  real_.resize(2 * rows, L);
  real_.topRows(rows) = complex_.real();
  real_.bottomRows(rows) = complex_.imag();
  rhs_ = RealVector::Zero(2 * rows);
  rhs_[0] = rhs_value();
  pinv_ = PseudoInverse(real_);
}

double WRSystem::residual(const RealVector& h) const {
  check_length(h.size(), params_, "WRSystem::residual");
  ComplexVector r = complex_ * h.cast<Complex>();
  r[0] -= rhs_value();
  return r.cwiseAbs().maxCoeff();
}

double wr_residual(const RealVector& g, const RealVector& h, const GaborParams& p) {
  check_length(g.size(), p, "wr_residual(g)");
  check_length(h.size(), p, "wr_residual(h)");
  const long L = p.L();
  const long a = p.a();
  const long M = p.M();
  const double target = static_cast<double>(a) / static_cast<double>(M);
  ComplexVector folded(a);
  ComplexVector spectrum(a);
  double worst = 0.0;
  for (long n = 0; n < L / M; ++n) {
    folded.setZero();
    for (long l = 0; l < L; ++l) folded[l % a] += h[l] * g[wrap_index(l - n * M, L)];
    fft::forward(view(folded), view(spectrum));
    if (n == 0) spectrum[0] -= target;
    worst = std::max(worst, spectrum.cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<double> verify_duality(const Window& g, const Window& h, long a, long M, std::span<const long> lengths) {
  std::vector<double> residuals;
  residuals.reserve(lengths.size());
  for (long L : lengths) {
    const GaborParams p(a, M, L);
    residuals.push_back(wr_residual(periodize(g, L), periodize(h, L), p));
  }
  return residuals;
}

}  // namespace gabdual
