#include "gabdual/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gabdual/fft.hpp"
#include "gabdual/functionals.hpp"
#include "gabdual/signal.hpp"

namespace gabdual {

std::vector<std::string> MetricsReport::field_names() {
  return {"grad_time", "grad_freq", "var_time",   "var_freq",       "envar_time",  "envar_freq",
          "s0",        "s0_weighted", "l1_time",  "l1_freq",        "l2",          "width3db",
          "mainlobe_width", "inv_product", "sidelobe_attenuation", "sidelobe_decay"};
}

std::vector<double> MetricsReport::values() const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {grad_time, grad_freq, var_time, var_freq, envar_time, envar_freq, s0, s0_weighted, l1_time, l1_freq, l2,
          width3db, mainlobe_width, inv_product, sidelobe_attenuation.value_or(nan), sidelobe_decay.value_or(nan)};
}

void concentration_report(const RealVector& x, const RealVector& gauss, MetricsReport& out) {
  if (gauss.size() != x.size()) throw InvalidArgument("concentration_report: gauge length mismatch");
  const ComplexVector X = dft(x);
  out.grad_time = std::sqrt(functional::gradient_squared(x));
  out.grad_freq = std::sqrt(functional::gradient_squared(X));
  out.var_time = functional::variance(x);
  out.var_freq = functional::variance(X);
  out.envar_time = std::sqrt(functional::energy_variance(x));
  out.envar_freq = std::sqrt(functional::energy_variance(X));

  const FullStft stft(gauss);
  const RealMatrix W = functional::s0_weight(x.size());
  out.s0 = functional::s0(stft, x);
  out.s0_weighted = functional::s0(stft, x, &W);

  out.l1_time = functional::l1(x);
  out.l1_freq = functional::l1(X);
  out.l2 = x.norm();
}

MetricsReport concentration_report(const RealVector& x, const RealVector& gauss) {
  MetricsReport r;
  concentration_report(x, gauss, r);
  return r;
}

RealVector padded_spectrum(const RealVector& x, int pad) {
  if (pad < 1) throw InvalidArgument("padded_spectrum: pad factor must be positive");
  const long L = x.size();
  const long N = pad * L;
  ComplexVector buf = ComplexVector::Zero(N);
  for (long p = 0; p < L; ++p) buf[wrap_index(signed_index(p, L), N)] = x[p];
  ComplexVector spec(N);
  fft::forward(buf, spec);
  return spec.cwiseAbs();
}

RealVector to_db(const RealVector& magnitude) {
  const double peak = magnitude.maxCoeff();
  RealVector db(magnitude.size());
  for (long k = 0; k < magnitude.size(); ++k) {
    db[k] = magnitude[k] > 0.0 ? std::max(20.0 * std::log10(magnitude[k] / peak), -400.0) : -400.0;
  }
  return db;
}

long width_samples(const RealVector& x, double ratio) {
  const long L = x.size();
  if (L == 0) return 0;
  Eigen::Index peak = 0;
  const double top = x.cwiseAbs().maxCoeff(&peak);
  if (top == 0.0) return 0;
  const double threshold = ratio * top;
  long count = 1;
  for (long k = 1; count < L && std::abs(x[wrap_index(peak + k, L)]) >= threshold; ++k) ++count;
  for (long k = 1; count < L && std::abs(x[wrap_index(peak - k, L)]) >= threshold; ++k) ++count;
  return count;
}

SidelobeAnalysis analyze_sidelobes(const RealVector& magnitude) {
  const long N = magnitude.size();
  const long nyquist = N / 2;
  SidelobeAnalysis out;
  auto at = [&](long k) { return magnitude[wrap_index(k, N)]; };

  // Climb to the lobe top first: some duals have a shallow dip at DC.
  long right = 0;
  while (right < nyquist && at(right + 1) > at(right)) ++right;
  while (right < nyquist && at(right + 1) < at(right)) ++right;
  long left = 0;
  while (left < nyquist && at(-left - 1) > at(-left)) ++left;
  while (left < nyquist && at(-left - 1) < at(-left)) ++left;
  out.mainlobe_right = right;
  out.mainlobe_left = left;

  const double peak = magnitude.maxCoeff();
  long i = right;
  while (i < nyquist) {
    const long start = i;
    while (i < nyquist && at(i + 1) >= at(i)) ++i;
    const double top = at(i);
    while (i < nyquist && at(i + 1) < at(i)) ++i;
    if (i == start) break;
    const double db = top > 0.0 ? 20.0 * std::log10(top / peak) : kSpectralFloorDb;
    out.lobes_db.push_back(std::max(db, kSpectralFloorDb));
  }
  return out;
}

void quality_report(const RealVector& x, long Lh, MetricsReport& out) {
  if (Lh <= 0) throw InvalidArgument("quality_report: L_h must be positive");
  if (x.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("quality_report: zero sequence");

  out.width3db = 100.0 * static_cast<double>(width_3db_samples(x)) / static_cast<double>(Lh);

  const RealVector mag = padded_spectrum(x);
  const SidelobeAnalysis lobes = analyze_sidelobes(mag);
  out.mainlobe_width =
      100.0 * static_cast<double>(lobes.mainlobe_left + lobes.mainlobe_right) / static_cast<double>(mag.size());
  out.inv_product = out.width3db > 0.0 && out.mainlobe_width > 0.0 ? 1e4 / (out.width3db * out.mainlobe_width) : 0.0;

  out.sidelobe_attenuation.reset();
  out.sidelobe_decay.reset();
  if (lobes.lobes_db.empty()) return;
  const double highest = *std::max_element(lobes.lobes_db.begin(), lobes.lobes_db.end());
  if (highest <= kSpectralFloorDb) return;
  const auto tail_begin = lobes.lobes_db.end() - std::min<std::ptrdiff_t>(3, std::ssize(lobes.lobes_db));
  const double tail = *std::max_element(tail_begin, lobes.lobes_db.end());
  out.sidelobe_attenuation = -highest;
  out.sidelobe_decay = highest - tail;
}

MetricsReport quality_report(const RealVector& x, long Lh) {
  MetricsReport r;
  quality_report(x, Lh, r);
  return r;
}

MetricsReport full_report(const RealVector& x, long Lh) {
  MetricsReport r;
  concentration_report(x, gauss_gauge(x.size()), r);
  quality_report(x, Lh, r);
  return r;
}

ComplexMatrix ambiguity(const RealVector& x) {
  const long L = x.size();
  const ComplexMatrix A = FullStft(x).forward(x);
  ComplexMatrix out(L, L);
  const long h = L / 2;
  for (long n = 0; n < L; ++n)
    for (long m = 0; m < L; ++m) out((m + h) % L, (n + h) % L) = A(m, n);
  return out;
}

}  // namespace gabdual
