#pragma once

#include <span>

#include "gabdual/types.hpp"

namespace gabdual::fft {

// Unnormalized transforms backed by FFTW. Plans are created once per
// (length, direction) and shared between threads.

/// out[k] = sum_l in[l] exp(-2 pi i k l / n)
void forward(std::span<const Complex> in, std::span<Complex> out);

/// out[l] = sum_k in[k] exp(+2 pi i k l / n)
void backward(std::span<const Complex> in, std::span<Complex> out);

/// Real-input transform: out[k] for k = 0..n/2 (out.size() == n/2 + 1).
void forward_real(std::span<const double> in, std::span<Complex> out);

/// Inverse of forward_real without normalization: out[l] = sum over all k of
/// X[k] exp(+2 pi i k l / n), X extended by Hermitian symmetry from
/// in[0..n/2]. The imaginary parts of in[0] (and in[n/2] for even n) are ignored.
void backward_real(std::span<const Complex> in, std::span<double> out);

inline void forward(const ComplexVector& in, ComplexVector& out) {
  out.resize(in.size());
  forward({in.data(), static_cast<std::size_t>(in.size())}, {out.data(), static_cast<std::size_t>(out.size())});
}

inline void backward(const ComplexVector& in, ComplexVector& out) {
  out.resize(in.size());
  backward({in.data(), static_cast<std::size_t>(in.size())}, {out.data(), static_cast<std::size_t>(out.size())});
}

}  // namespace gabdual::fft
