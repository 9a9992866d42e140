#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gabdual_cli/config.hpp"
#include "gabdual_cli/csv.hpp"

namespace gabdual::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitInfeasible = 3, kExitNotConverged = 4 };

/// Computes the window a configuration asks for. Library errors propagate.
WindowResult solve(const ExperimentConfig& cfg);

/// Solves independent configurations concurrently; results keep input order.
std::vector<WindowResult> solve_all(const std::vector<ExperimentConfig>& cfgs);

/// exp1, exp2, exp3, tight, priors-demo, tfedit
const std::vector<std::string>& preset_names();

/// The window configurations behind a preset (empty for tfedit).
std::vector<ExperimentConfig> preset_configs(std::string_view preset, std::uint64_t seed = 0);

/// Solves cfg and writes metrics.csv plus the per-window files into cfg.output.
int run_config(const ExperimentConfig& cfg, std::ostream& log);

/// Runs a preset into out (one subdirectory per window, metrics.csv on top).
int run_preset(std::string_view preset, const std::filesystem::path& out, std::uint64_t seed, std::ostream& log);

/// Prints the metrics row of a window.csv file.
int metrics_command(const std::filesystem::path& window_csv, long Lh, std::ostream& out);

/// Maps library and configuration errors onto exit codes, reporting to err.
template <typename F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleConstraint& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FrameError& e) {
    err << "frame error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

// ---------------------------------------------------------------------------
// Removal of a localized component from a multicomponent signal.

struct TfEditConfig {
  WindowSpec window{WindowKind::hann, 160, {}};
  long a = 40;
  long M = 80;
  long L = 480;
  /// Support of the time-concentrated dual.
  long support = 240;
  SolverConfig solver;
  /// Mask: frames [frame_first, frame_last], channels [channel_first,
  /// channel_last] and their mirror images M - m.
  long frame_first = 5;
  long frame_last = 7;
  long channel_first = 28;
  long channel_last = 35;
  /// Dilation in frames and channels of the neighborhood leakage is measured against.
  long frame_dilation = 3;
  long channel_dilation = 2;
  double noise = 1e-3;
  std::uint64_t seed = 0;

  TfEditConfig();
};

struct TfEditReport {
  RealVector signal;      // two chirps, the localized sinusoid and noise
  RealVector target;      // the signal without the sinusoid
  RealVector canonical;   // dual windows (circular, length L)
  RealVector optimized;
  RealVector edited_canonical;  // synthesis from the masked coefficients
  RealVector edited_optimized;
  Coefficients mask;      // 1 inside the mask, 0 elsewhere
  /// ||f - synth(h, analyze(g, f))|| / ||f||, mask left empty.
  double zero_mask_error_canonical = 0.0;
  double zero_mask_error_optimized = 0.0;
  /// ||synth(h, 0)||^2 with every coefficient masked.
  double full_mask_energy_canonical = 0.0;
  double full_mask_energy_optimized = 0.0;
  /// Energy of analyze(g, edited - target) outside the dilated mask, relative to ||f||^2.
  double leakage_canonical = 0.0;
  double leakage_optimized = 0.0;
  WindowResult optimized_result;
};

/// Static mask membership for a lattice with M channels.
bool in_mask(const TfEditConfig& cfg, long m, long n, long frame_dilation = 0, long channel_dilation = 0);

TfEditReport demo_tfedit(const TfEditConfig& cfg);

}  // namespace gabdual::cli
