#pragma once

// Slow reference implementations written straight from the defining sums.
// They share no code with the library beyond the vector typedefs.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

long mod(long l, long L);
long signed_pos(long p, long L);

/// Direct DFT, unitary scaling.
CVec dft(const CVec& x);
CVec dft(const Vec& x);
CVec idft(const CVec& X);

/// Dense Gabor analysis matrix: row m + n M holds conj(g[l - n a] e^{2 pi i m l / M}).
CMat analysis_matrix(const CVec& g, long a, long M);

/// c[m,n] by triple loop, returned as an M x (L/a) matrix.
CMat analyze(const Vec& g, long a, long M, const CVec& f);
/// f[l] = sum c[m,n] h[l - na] e^{2 pi i m l / M}.
CVec synthesize(const Vec& h, long a, long M, const CMat& c);

/// S = C^* C from the dense analysis matrix.
Mat frame_operator(const Vec& g, long a, long M);
Vec canonical_dual(const Vec& g, long a, long M);
Vec canonical_tight(const Vec& g, long a, long M);

/// WR condition residual max_k |<h, M_{mL/a} T_{nM} g>| - (a/M) delta).
double wr_residual(const Vec& g, const Vec& h, long a, long M);

/// Full STFT matrix G (L^2 x L), row m + n L: g[l - n] e^{-2 pi i m l / L}.
CMat full_stft_matrix(const Vec& g);

/// argmin_t 1/2 (y - t)^2 + phi(t) by golden-section search on [lo, hi].
double scalar_argmin(const std::function<double(double)>& phi, double y, double lo, double hi);

/// argmin_x 1/2 ||y - x||^2 + gamma x^T Q x via a dense solve (Q symmetric PSD).
Vec quadratic_prox(const Vec& y, const Mat& Q, double gamma);

/// Quadratic form matrices.
Mat difference_gram(long L);                  // D^T D, D the circular forward difference
Mat frequency_difference_gram(long L);        // Re(F^* D^T D F)
Mat diagonal(const Vec& d);

/// argmin_x 1/2 ||y - x||^2 + gamma ||W o G x||_1 over real x, by FISTA on the dual.
Vec s0_prox(const Vec& y, double gamma, const Vec& gauss, const Mat* weight, int iterations);

/// ||grad x||^2, var(|x|), var(|x|^2) etc. from explicit loops over signed indices.
double gradient_energy(const CVec& x);
double variance_abs(const CVec& x);
double variance_energy(const CVec& x);
double s0_norm(const Vec& x, const Vec& gauss, const Mat* weight);

/// |DTFT| of a finite window (offset = index of first sample) at normalized frequencies k / N.
Vec dtft_magnitude(const Vec& values, long offset, long N);

}  // namespace oracle
