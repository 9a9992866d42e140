#pragma once

#include <map>
#include <string>
#include <string_view>

#include "gabdual/types.hpp"

namespace gabdual {

enum class WindowKind { itersine, tukey, nuttall, hann, gaussian, rect };

WindowKind parse_window_kind(std::string_view name);
std::string_view to_string(WindowKind kind);

/// Finitely supported real sequence on the index range
/// {-floor(n/2), ..., ceil(n/2)-1}; values outside the range are zero.
class Window {
 public:
  Window() = default;

  /// values[i] holds index centered_range(values.size()).first + i.
  explicit Window(RealVector values, bool symmetric = false);

  /// Samples of a length-L circular sequence on the centered index range of
  /// length n (n <= L).
  static Window from_circular(const RealVector& circular, long n);

  [[nodiscard]] long length() const { return values_.size(); }
  [[nodiscard]] IndexInterval range() const { return centered_range(length()); }
  /// Smallest closed interval holding every nonzero value (empty for the zero window).
  [[nodiscard]] IndexInterval support() const { return support_; }
  [[nodiscard]] bool symmetric() const { return symmetric_; }
  [[nodiscard]] const RealVector& values() const { return values_; }

  /// Value at signed index l; zero outside the index range.
  [[nodiscard]] double operator[](long l) const;

 private:
  RealVector values_;
  IndexInterval support_{};
  bool symmetric_ = false;
};

using WindowParams = std::map<std::string, double>;

/// Samples a continuous prototype on [-1/2, 1/2) at t = l / length.
///
/// Required parameters: `r` in [0, 1] for tukey (transition ratio), `c` > 0
/// for gaussian (width factor, g(t) = exp(-pi (t n)^2 / (c n))).
Window make_window(WindowKind kind, long length, const WindowParams& params = {});

/// L-periodic wrap: out[l mod L] = sum_k w[l - k L].
RealVector periodize(const Window& w, long L);

/// Unit-norm periodic Gaussian exp(-pi l^2 / L) used as the S0 gauge window.
RealVector gauss_gauge(long L);

/// Unitary DFT: X[k] = L^{-1/2} sum_l x[l] exp(-2 pi i k l / L).
ComplexVector dft(const ComplexVector& x);
ComplexVector dft(const RealVector& x);
ComplexVector idft(const ComplexVector& X);

}  // namespace gabdual
