#pragma once

#include <span>
#include <vector>

#include "gabdual/linalg.hpp"
#include "gabdual/signal.hpp"
#include "gabdual/types.hpp"

namespace gabdual {

/// Separable lattice: hop a, M channels, signal length L (a | L, M | L).
class GaborParams {
 public:
  GaborParams(long a, long M, long L);

  [[nodiscard]] long a() const { return a_; }
  [[nodiscard]] long M() const { return M_; }
  [[nodiscard]] long L() const { return L_; }
  /// Number of time positions L / a.
  [[nodiscard]] long frames() const { return L_ / a_; }
  [[nodiscard]] double redundancy() const { return static_cast<double>(M_) / static_cast<double>(a_); }

  bool operator==(const GaborParams&) const = default;

 private:
  long a_;
  long M_;
  long L_;
};

/// Gabor coefficients: row m (channel), column n (time index), M x L/a.
using Coefficients = ComplexMatrix;

/// c[m,n] = sum_l f[l] conj(g[l - n a]) exp(-2 pi i m l / M)
Coefficients analyze(const ComplexVector& g, const GaborParams& p, const ComplexVector& f);
Coefficients analyze(const RealVector& g, const GaborParams& p, const ComplexVector& f);

/// f[l] = sum_{m,n} c[m,n] h[l - n a] exp(2 pi i m l / M), the adjoint of analyze.
ComplexVector synthesize(const ComplexVector& h, const GaborParams& p, const Coefficients& c);
ComplexVector synthesize(const RealVector& h, const GaborParams& p, const Coefficients& c);

/// Full STFT (a = 1, M = L) of real signals with a fixed real window.
///
/// forward(x)[m,n] = sum_l x[l] g[l-n] exp(-2 pi i m l / L). For unit-norm g
/// the full STFT satisfies G* G = L Id.
class FullStft {
 public:
  explicit FullStft(RealVector g);

  [[nodiscard]] long length() const { return g_.size(); }
  [[nodiscard]] const RealVector& window() const { return g_; }

  [[nodiscard]] ComplexMatrix forward(const RealVector& x) const;
  void forward(const RealVector& x, ComplexMatrix& out) const;
  /// Re(G* c), the adjoint restricted to real signals.
  [[nodiscard]] RealVector adjoint(const ComplexMatrix& c) const;

  /// Rows m = 0..L/2 of forward(x); the others follow from the Hermitian
  /// symmetry G x[L-m, n] = conj(G x[m, n]) of real signals.
  [[nodiscard]] long half_rows() const { return length() / 2 + 1; }
  void forward_half(const RealVector& x, ComplexMatrix& out) const;
  /// Re(G* c) for the Hermitian extension of the half-spectrum matrix c.
  void adjoint_half(const ComplexMatrix& c, RealVector& out) const;
  /// Multiplicity of half-spectrum row m in the full matrix (1 or 2).
  [[nodiscard]] double row_multiplicity(long m) const;

 private:
  RealVector g_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] double ratio() const { return upper / lower; }
};

/// Frame operator S = G* G of a real window.
///
/// S[l,k] = M sum_n g[l-na] g[k-na] when l = k (mod M) and vanishes otherwise,
/// so S is held as M symmetric blocks of size L/M (one per residue class) with
/// their eigendecompositions. dense() reassembles the full L x L matrix.
class FrameOperator {
 public:
  FrameOperator(const RealVector& g, const GaborParams& p);

  [[nodiscard]] const GaborParams& params() const { return params_; }
  [[nodiscard]] FrameBounds bounds() const;
  [[nodiscard]] RealMatrix dense() const;

  [[nodiscard]] RealVector apply(const RealVector& x) const;
  /// S^{-1} x; throws FrameError when S is singular.
  [[nodiscard]] RealVector solve(const RealVector& x) const;
  /// S^{-1/2} x; throws FrameError when S is singular.
  [[nodiscard]] RealVector inverse_sqrt(const RealVector& x) const;

 private:
  enum class Power { one, minus_one, minus_half };
  [[nodiscard]] RealVector apply_power(const RealVector& x, Power power) const;
  void require_frame(const char* what) const;

  GaborParams params_;
  std::vector<RealVector> eigenvalues_;   // per residue class
  std::vector<RealMatrix> eigenvectors_;  // per residue class
};

/// Frame operator assembled entry by entry into a dense L x L matrix.
RealMatrix frame_operator_dense(const RealVector& g, const GaborParams& p);

/// Extreme eigenvalues of the densely assembled frame operator.
FrameBounds frame_bounds(const RealVector& g, const GaborParams& p);

/// Relative eigenvalue floor below which a frame operator counts as singular.
inline constexpr double kSingularFrameTolerance = 1e-12;

/// S^{-1} g, the minimal-norm dual window.
RealVector canonical_dual(const RealVector& g, const GaborParams& p);

/// S^{-1/2} g, generating a Parseval frame.
RealVector canonical_tight(const RealVector& g, const GaborParams& p);

/// Wexler-Raz system G_{g,M,a} h = (a/M) e_0 on C^L.
///
/// Complex equation m + n a (m < a, n < L/M) is
///   sum_l h[l] g[l - n M] exp(-2 pi i m l / a).
/// Since windows are real, the system is solved in the equivalent real form
/// obtained by stacking real parts over imaginary parts.
class WRSystem {
 public:
  WRSystem(const RealVector& g, const GaborParams& p);

  [[nodiscard]] const GaborParams& params() const { return params_; }
  [[nodiscard]] const RealVector& window() const { return g_; }
  /// Number of complex equations a L / M.
  [[nodiscard]] long equations() const { return complex_.rows(); }
  [[nodiscard]] const ComplexMatrix& complex_matrix() const { return complex_; }
  [[nodiscard]] const RealMatrix& matrix() const { return real_; }
  [[nodiscard]] const RealVector& rhs() const { return rhs_; }
  [[nodiscard]] double rhs_value() const { return static_cast<double>(params_.a()) / static_cast<double>(params_.M()); }
  [[nodiscard]] const PseudoInverse& pinv() const { return pinv_; }

  /// max over equations of |(G h)_k - rhs_k|.
  [[nodiscard]] double residual(const RealVector& h) const;

 private:
  GaborParams params_;
  RealVector g_;
  ComplexMatrix complex_;
  RealMatrix real_;
  RealVector rhs_;
  PseudoInverse pinv_;
};

/// WR residual max_k |(G_{g,M,a} h)_k - (a/M) delta_k| computed without
/// assembling the matrix.
double wr_residual(const RealVector& g, const RealVector& h, const GaborParams& p);

/// Periodizes both windows to each length and returns the WR residual per length.
std::vector<double> verify_duality(const Window& g, const Window& h, long a, long M,
                                   std::span<const long> lengths);

}  // namespace gabdual
