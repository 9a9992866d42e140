#include "gabdual/functionals.hpp"

#include <cmath>
#include <numbers>

namespace gabdual::functional {
namespace {

template <typename Vec>
double weighted_abs_sum(const Vec& x, const RealVector& weight) {
  return (x.cwiseAbs().array() * weight.array()).sum();
}

template <typename Vec>
double circular_difference_energy(const Vec& x) {
  const long L = x.size();
  double acc = 0.0;
  for (long l = 0; l < L; ++l) acc += std::norm(x[(l + 1) % L] - x[l]);
  return acc;
}

}  // namespace

RealVector variance_weight(long L) {
  RealVector w(L);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  for (long p = 0; p < L; ++p) {
    const double l = static_cast<double>(signed_index(p, L));
    w[p] = l * l * scale;
  }
  return w;
}

RealVector energy_weight(long L) {
  RealVector w(L);
  for (long p = 0; p < L; ++p) {
    const double l = static_cast<double>(signed_index(p, L));
    w[p] = l * l / static_cast<double>(L);
  }
  return w;
}

RealVector gradient_symbol(long L) {
  RealVector psi(L);
  for (long p = 0; p < L; ++p) {
    const double l = static_cast<double>(signed_index(p, L));
    psi[p] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * l / static_cast<double>(L));
  }
  return psi;
}

RealMatrix s0_weight(long L) {
  const RealVector w2 = energy_weight(L);
  RealMatrix W(L, L);
  for (long n = 0; n < L; ++n)
    for (long m = 0; m < L; ++m) W(m, n) = std::log(1.0 + w2[n] + w2[m]);
  return W;
}

double l1(const RealVector& x) { return x.cwiseAbs().sum(); }
double l1(const ComplexVector& x) { return x.cwiseAbs().sum(); }

double variance(const RealVector& x) { return weighted_abs_sum(x, variance_weight(x.size())); }
double variance(const ComplexVector& x) { return weighted_abs_sum(x, variance_weight(x.size())); }

double energy_variance(const RealVector& x) {
  return (x.array().square() * energy_weight(x.size()).array()).sum();
}
double energy_variance(const ComplexVector& x) {
  return (x.cwiseAbs2().array() * energy_weight(x.size()).array()).sum();
}

double gradient_squared(const RealVector& x) { return circular_difference_energy(x); }
double gradient_squared(const ComplexVector& x) { return circular_difference_energy(x); }

double s0(const FullStft& stft, const RealVector& x, const RealMatrix* weight) {
  ComplexMatrix c;
  stft.forward_half(x, c);
  const long H = c.rows();
  double acc = 0.0;
  for (long n = 0; n < c.cols(); ++n) {
    for (long m = 0; m < H; ++m) {
      const double w = weight != nullptr ? (*weight)(m, n) : 1.0;
      acc += stft.row_multiplicity(m) * w * std::abs(c(m, n));
    }
  }
  return acc;
}

}  // namespace gabdual::functional
