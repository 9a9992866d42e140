#include "gabdual/signal.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gabdual/fft.hpp"

namespace gabdual {
namespace {

constexpr double kPi = std::numbers::pi;

double require(const WindowParams& params, const std::string& key, std::string_view kind) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InvalidArgument("make_window: " + std::string(kind) + " requires parameter '" + key + "'");
  }
  return it->second;
}

double tukey(double t, double r) {
  const double at = std::abs(t);
  if (at <= (1.0 - r) / 2.0) return 1.0;
  if (at >= 0.5) return 0.0;
  return 0.5 + 0.5 * std::cos(kPi * (2.0 * at + r - 1.0) / r);
}

double nuttall(double t) {
  constexpr double c[] = {0.355768, 0.487396, 0.144232, 0.012604};
  double v = 0.0;
  for (int k = 0; k < 4; ++k) v += c[k] * std::cos(2.0 * k * kPi * t);
  return v;
}

}  // namespace

WindowKind parse_window_kind(std::string_view name) {
  if (name == "itersine") return WindowKind::itersine;
  if (name == "tukey") return WindowKind::tukey;
  if (name == "nuttall") return WindowKind::nuttall;
  if (name == "hann") return WindowKind::hann;
  if (name == "gaussian" || name == "gauss") return WindowKind::gaussian;
  if (name == "rect" || name == "rectangular") return WindowKind::rect;
  throw InvalidArgument("unknown window kind '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::itersine: return "itersine";
    case WindowKind::tukey: return "tukey";
    case WindowKind::nuttall: return "nuttall";
    case WindowKind::hann: return "hann";
    case WindowKind::gaussian: return "gaussian";
    case WindowKind::rect: return "rect";
  }
  return "unknown";
}

Window::Window(RealVector values, bool symmetric)
    : values_(std::move(values)), symmetric_(symmetric) {
  const IndexInterval r = range();
  long first = r.last + 1;
  long last = r.first - 1;
  for (long i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) {
      first = std::min(first, r.first + i);
      last = std::max(last, r.first + i);
    }
  }
  support_ = first <= last ? IndexInterval{first, last} : IndexInterval{0, -1};
}

Window Window::from_circular(const RealVector& circular, long n) {
  const long L = circular.size();
  if (n < 1 || n > L) throw InvalidArgument("Window::from_circular: length out of range");
  const IndexInterval r = centered_range(n);
  RealVector values(n);
  for (long l = r.first; l <= r.last; ++l) values[l - r.first] = circular[wrap_index(l, L)];
  return Window(std::move(values));
}

double Window::operator[](long l) const {
  const IndexInterval r = range();
  return r.contains(l) ? values_[l - r.first] : 0.0;
}

Window make_window(WindowKind kind, long length, const WindowParams& params) {
  if (length < 2) throw InvalidArgument("make_window: length must be at least 2");
  const std::string_view name = to_string(kind);

  double tukey_r = 0.0;
  double gauss_c = 1.0;
  if (kind == WindowKind::tukey) {
    tukey_r = require(params, "r", name);
    if (!(tukey_r >= 0.0 && tukey_r <= 1.0)) throw InvalidArgument("make_window: tukey r must lie in [0,1]");
  }
  if (kind == WindowKind::gaussian) {
    gauss_c = require(params, "c", name);
    if (!(gauss_c > 0.0)) throw InvalidArgument("make_window: gaussian c must be positive");
  }

  const IndexInterval r = centered_range(length);
  const double n = static_cast<double>(length);
  RealVector values(length);
  for (long l = r.first; l <= r.last; ++l) {
    const double t = static_cast<double>(l) / n;
    // Tapered prototypes vanish on the boundary t = -1/2; evaluate that point
    // exactly instead of through cos(pi/2) round-off.
    const bool boundary = (2 * l == -length);
    double v = 0.0;
    switch (kind) {
      case WindowKind::itersine: {
        const double c = std::cos(kPi * t);
        v = boundary ? 0.0 : std::sin(0.5 * kPi * c * c);
        break;
      }
      case WindowKind::tukey:
        v = tukey(t, tukey_r);
        break;
      case WindowKind::nuttall:
        v = boundary ? 0.0 : nuttall(t);
        break;
      case WindowKind::hann:
        v = boundary ? 0.0 : 0.5 + 0.5 * std::cos(2.0 * kPi * t);
        break;
      case WindowKind::gaussian: {
        const double x = t * n;
        v = std::exp(-kPi * x * x / (gauss_c * n));
        break;
      }
      case WindowKind::rect:
        v = 1.0;
        break;
    }
    values[l - r.first] = v;
  }
  return Window(std::move(values), true);
}

RealVector periodize(const Window& w, long L) {
  if (L < 1) throw InvalidArgument("periodize: L must be positive");
  RealVector out = RealVector::Zero(L);
  const IndexInterval r = w.range();
  for (long l = r.first; l <= r.last; ++l) out[wrap_index(l, L)] += w[l];
  return out;
}

RealVector gauss_gauge(long L) {
  if (L < 1) throw InvalidArgument("gauss_gauge: L must be positive");
  RealVector g(L);
  for (long p = 0; p < L; ++p) {
    const double l = static_cast<double>(signed_index(p, L));
    g[p] = std::exp(-kPi * l * l / static_cast<double>(L));
  }
  return g / g.norm();
}

ComplexVector dft(const ComplexVector& x) {
  ComplexVector out(x.size());
  fft::forward({x.data(), static_cast<size_t>(x.size())}, {out.data(), static_cast<size_t>(out.size())});
  if (x.size() > 0) out /= std::sqrt(static_cast<double>(x.size()));
  return out;
}

ComplexVector dft(const RealVector& x) {
  return dft(ComplexVector(x.cast<Complex>()));
}

ComplexVector idft(const ComplexVector& X) {
  ComplexVector out(X.size());
  fft::backward({X.data(), static_cast<size_t>(X.size())}, {out.data(), static_cast<size_t>(out.size())});
  if (X.size() > 0) out /= std::sqrt(static_cast<double>(X.size()));
  return out;
}

}  // namespace gabdual
