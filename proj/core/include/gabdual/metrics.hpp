#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gabdual/gabor.hpp"
#include "gabdual/types.hpp"

namespace gabdual {

/// Concentration and window quality measures of a length-L circular sequence.
///
/// Concentration fields are the norms themselves (not their squares).
/// Widths are in percent; sidelobe fields are empty when no sidelobe rises
/// above the spectral floor.
struct MetricsReport {
  double grad_time = 0.0;    // ||grad x||_2
  double grad_freq = 0.0;    // ||grad F x||_2
  double var_time = 0.0;     // var(|x|)
  double var_freq = 0.0;     // var(|F x|)
  double envar_time = 0.0;   // sqrt(var(|x|^2))
  double envar_freq = 0.0;   // sqrt(var(|F x|^2))
  double s0 = 0.0;
  double s0_weighted = 0.0;
  double l1_time = 0.0;
  double l1_freq = 0.0;
  double l2 = 0.0;

  double width3db = 0.0;        // percent of L_h
  double mainlobe_width = 0.0;  // percent of the frequency range
  double inv_product = 0.0;     // 1 / (width fraction * mainlobe fraction)
  std::optional<double> sidelobe_attenuation;  // dB
  std::optional<double> sidelobe_decay;        // dB

  /// Column names in output order, matching values().
  static std::vector<std::string> field_names();
  /// All fields in field_names() order; not-applicable entries are NaN.
  [[nodiscard]] std::vector<double> values() const;
};

inline constexpr int kZeroPadFactor = 16;
inline constexpr double kSpectralFloorDb = -120.0;

/// Fills the concentration half. `gauss` is the unit-norm S0 gauge window of
/// the same length as x.
void concentration_report(const RealVector& x, const RealVector& gauss, MetricsReport& out);
MetricsReport concentration_report(const RealVector& x, const RealVector& gauss);

/// Fills the quality half; L_h is the reference length for the -3 dB width.
void quality_report(const RealVector& x, long Lh, MetricsReport& out);
MetricsReport quality_report(const RealVector& x, long Lh);

/// Both halves with the standard gauge window.
MetricsReport full_report(const RealVector& x, long Lh);

/// Magnitude spectrum with zero padding: x (signed indices, circular length L)
/// is embedded into a length pad*L sequence. Entry k is |X(k / (pad L))|.
RealVector padded_spectrum(const RealVector& x, int pad = kZeroPadFactor);

/// 20 log10(|X| / max|X|), floored at -400 dB for exact zeros.
RealVector to_db(const RealVector& magnitude);

/// Amplitude ratio of the -3 dB width: 10^(-3/10), i.e. -3 dB read on a
/// 10 log10 scale of |x|.
inline const double kWidthThreshold = std::pow(10.0, -0.3);

/// Number of contiguous samples around the magnitude peak with |x| >= ratio * max|x|.
long width_samples(const RealVector& x, double ratio);
inline long width_3db_samples(const RealVector& x) { return width_samples(x, kWidthThreshold); }

struct SidelobeAnalysis {
  long mainlobe_left = 0;   // bins from DC to the left flanking minimum
  long mainlobe_right = 0;  // bins from DC to the right flanking minimum
  std::vector<double> lobes_db;  // levels of the sidelobes from the mainlobe to Nyquist, floored
};

/// Mainlobe edges and sidelobe levels of a magnitude spectrum (DC at bin 0).
///
/// The mainlobe is the lobe containing DC: from DC the spectrum is followed
/// uphill to the lobe top and then downhill to the first local minimum on
/// each side. Without a dip at DC this is the pair of minima flanking DC.
SidelobeAnalysis analyze_sidelobes(const RealVector& magnitude);

/// G_{x,1,L} x as an L x L matrix, fftshifted so that the origin sits at (L/2, L/2).
ComplexMatrix ambiguity(const RealVector& x);

}  // namespace gabdual
