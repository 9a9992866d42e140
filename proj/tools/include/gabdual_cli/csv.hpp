#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <gabdual/gabdual.hpp>

namespace gabdual::cli {

/// %.17g, so that every double survives a write/read round trip; NaN is "nan".
std::string format_number(double v);

/// Summary of one computed window, the unit every writer works on.
struct WindowResult {
  std::string name;
  RealVector circular;  // length-L sequence, position 0 holds index 0
  long Lh = 0;          // reference length of the -3 dB width
  /// converged, not_converged, exact (closed form) or disjoint (POCS between
  /// sets without common point, stalled as expected).
  std::string status = "exact";
  int iterations = 0;
  double constraint_residual = 0.0;
  std::vector<double> objective;
  std::vector<double> residual;
  MetricsReport metrics;

  /// false only for an unexpected lack of convergence.
  [[nodiscard]] bool ok() const { return status != "not_converged"; }
};

/// index,value over the signed index range of the circular sequence.
void write_window_csv(const std::filesystem::path& path, const RealVector& circular);
/// frequency,db of the zero-padded spectrum, frequency in cycles per sample on [-1/2, 1/2).
void write_spectrum_csv(const std::filesystem::path& path, const RealVector& circular);
/// iteration,objective,residual
void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& objective,
                     const std::vector<double>& residual);
/// time,frequency,db of the centered ambiguity function.
void write_ambiguity_csv(const std::filesystem::path& path, const RealVector& circular);

/// name,L,Lh,status,iterations,constraint_residual followed by every MetricsReport field.
std::string metrics_header();
std::string metrics_row(const std::string& name, long L, long Lh, const std::string& status, int iterations,
                        double constraint_residual, const MetricsReport& m);
void write_metrics_csv(const std::filesystem::path& path, const std::vector<WindowResult>& results);

/// Reads a window.csv back into a circular sequence. Throws Error on a
/// malformed file or an index set other than a full centered range.
RealVector read_window_csv(const std::filesystem::path& path);

/// window.csv, spectrum.csv, trace.csv (and ambiguity.csv) into dir.
void write_window_files(const std::filesystem::path& dir, const WindowResult& r, bool ambiguity);

/// Generic CSV with a header row; cells are written verbatim.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace gabdual::cli
