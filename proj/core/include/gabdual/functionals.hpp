#pragma once

#include "gabdual/gabor.hpp"
#include "gabdual/types.hpp"

// Concentration functionals shared by the priors and the metrics. Indices are
// signed (see signed_index), so position L-1 stands for index -1.
namespace gabdual::functional {

/// l^2 / sqrt(L): the weighted-l1 weight that turns var(|x|) into a weighted l1 norm.
RealVector variance_weight(long L);

/// w^2[l] = l^2 / L, with w = l / sqrt(L).
RealVector energy_weight(long L);

/// psi[l] = 2 - 2 cos(2 pi l / L), the symbol of the circular second difference.
RealVector gradient_symbol(long L);

/// W[m,n] = ln(1 + w^2[n] + w^2[m]) on the full STFT grid (row m, column n).
RealMatrix s0_weight(long L);

double l1(const RealVector& x);
double l1(const ComplexVector& x);

/// var(|x|) = sum_l (l^2 / sqrt(L)) |x_l|, center of gravity pinned to 0.
double variance(const RealVector& x);
double variance(const ComplexVector& x);

/// var(|x|^2) = sum_l (l^2 / L) |x_l|^2 = ||w x||^2.
double energy_variance(const RealVector& x);
double energy_variance(const ComplexVector& x);

/// ||grad x||_2^2 with the circular forward difference x[l+1] - x[l].
double gradient_squared(const RealVector& x);
double gradient_squared(const ComplexVector& x);

/// ||W o G x||_1 for the full STFT G; weight may be null (W = 1).
double s0(const FullStft& stft, const RealVector& x, const RealMatrix* weight = nullptr);

}  // namespace gabdual::functional
