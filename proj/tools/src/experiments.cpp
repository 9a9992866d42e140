#include "gabdual_cli/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>

namespace gabdual::cli {
namespace {

std::string fixed(double v, int digits = 4) {
  if (std::isnan(v)) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

WindowResult from_report(const ExperimentConfig& cfg, SolveReport&& r) {
  WindowResult out;
  out.name = cfg.name;
  out.circular = std::move(r.circular);
  out.Lh = cfg.support_length();
  out.status = r.converged ? "converged" : "not_converged";
  out.iterations = r.iterations;
  out.constraint_residual = r.constraint_residual;
  out.objective = std::move(r.objective);
  out.residual = std::move(r.residual);
  out.metrics = r.metrics ? *r.metrics : full_report(out.circular, out.Lh);
  return out;
}

WindowResult closed_form(const ExperimentConfig& cfg, RealVector h, double residual) {
  WindowResult out;
  out.name = cfg.name;
  out.Lh = cfg.support_length();
  out.status = "exact";
  out.constraint_residual = residual;
  out.metrics = full_report(h, out.Lh);
  out.circular = std::move(h);
  return out;
}

double tight_deviation(const RealVector& h, const GaborParams& p) {
  const FrameBounds fb = FrameOperator(h, p).bounds();
  return std::max(std::abs(fb.lower - 1.0), std::abs(fb.upper - 1.0));
}

ExperimentConfig base(std::string name, WindowSpec w, long a, long M, long L, long support, std::uint64_t seed) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.window = std::move(w);
  c.a = a;
  c.M = M;
  c.L = L;
  c.support = support;
  c.solver.seed = seed;
  return c;
}

void print_table(std::ostream& log, const std::vector<WindowResult>& results) {
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-13s %6s %9s %9s %9s %9s %9s %10s\n", "window", "status", "iter", "w3dB[%]",
                "ML-W[%]", "1/pr-W", "SL-A[dB]", "SL-D[dB]", "WR/frame");
  log << line;
  for (const WindowResult& r : results) {
    const MetricsReport& m = r.metrics;
    std::snprintf(line, sizeof line, "%-16s %-13s %6d %9s %9s %9s %9s %9s %10s\n", r.name.c_str(), r.status.c_str(),
                  r.iterations, fixed(m.width3db, 3).c_str(), fixed(m.mainlobe_width, 3).c_str(),
                  fixed(m.inv_product, 2).c_str(), fixed(m.sidelobe_attenuation.value_or(std::nan("")), 2).c_str(),
                  fixed(m.sidelobe_decay.value_or(std::nan("")), 2).c_str(), sci(r.constraint_residual).c_str());
    log << line;
  }
}

int finish(const std::filesystem::path& out, const std::vector<WindowResult>& results, bool ambiguity,
           std::ostream& log, bool subdirs) {
  write_metrics_csv(out / "metrics.csv", results);
  for (const WindowResult& r : results) write_window_files(subdirs ? out / r.name : out, r, ambiguity);
  print_table(log, results);
  for (const WindowResult& r : results) {
    if (!r.ok()) {
      log << "warning: '" << r.name << "' did not reach the stopping tolerance\n";
      return kExitNotConverged;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<ExperimentConfig> exp1(std::uint64_t seed) {
  const WindowSpec tukey{WindowKind::tukey, 240, {{"r", 0.6}}};
  auto make = [&](std::string name, PriorKind kind, bool both_domains, double gamma) {
    ExperimentConfig c = base(std::move(name), tukey, 50, 300, 900, 600, seed);
    c.priors.push_back({kind, Domain::time, 1.0});
    if (both_domains) c.priors.push_back({kind, Domain::frequency, 1.0});
    c.solver.gamma = gamma;
    return c;
  };
  std::vector<ExperimentConfig> out{
      make("canonical", PriorKind::l2, false, 1.0),
      make("gradient", PriorKind::grad, true, 1.0),
      make("variance", PriorKind::weighted_l1_var, true, 1e-7),
      make("energy_variance", PriorKind::weighted_l2_envar, true, 1.0),
      make("s0", PriorKind::s0, false, 1e-6),
      make("s0_weighted", PriorKind::s0_weighted, false, 1e-6),
  };
  // The nonsmooth priors creep towards their minimizers; 1e-6 already pins
  // the ordering of every criterion.
  for (ExperimentConfig& c : out) {
    if (c.solver.gamma < 1.0) {
      c.solver.rel_tol = 1e-6;
      c.solver.max_iter = 5000;
    }
  }
  return out;
}

std::vector<ExperimentConfig> exp2(std::uint64_t seed) {
  std::vector<ExperimentConfig> out;
  const std::pair<const char*, double> ratios[] = {{"ratio_1000", 1000.0}, {"ratio_100", 100.0}, {"ratio_5", 5.0},
                                                   {"ratio_0.1", 0.1}};
  for (const auto& [name, ratio] : ratios) {
    ExperimentConfig c = base(name, {WindowKind::itersine, 240, {}}, 50, 300, 900, 600, seed);
    c.priors = {{PriorKind::grad, Domain::time, ratio}, {PriorKind::grad, Domain::frequency, 1.0}};
    c.solver.max_iter = 20000;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ExperimentConfig> exp3(std::uint64_t seed) {
  const WindowSpec nuttall{WindowKind::nuttall, 120, {}};
  ExperimentConfig trunc = base("truncation", nuttall, 30, 60, 360, 120, seed);
  trunc.problem = Problem::truncation;
  ExperimentConfig opt = base("optimized", nuttall, 30, 60, 360, 120, seed);
  opt.priors = {{PriorKind::l1, Domain::time, 1e-3},
                {PriorKind::l1, Domain::frequency, 1e-3},
                {PriorKind::grad, Domain::time, 1.0},
                {PriorKind::grad, Domain::frequency, 1.0}};
  opt.solver.gamma = 0.01;
  return {trunc, opt};
}

std::vector<ExperimentConfig> tight(std::uint64_t seed) {
  const WindowSpec itersine{WindowKind::itersine, 60, {}};
  ExperimentConfig ref = base("itersine", itersine, 30, 60, 720, 360, seed);
  ref.problem = Problem::canonical_tight;
  ExperimentConfig opt = base("tight_optimized", itersine, 30, 60, 720, 360, seed);
  opt.problem = Problem::tight;
  opt.priors = {{PriorKind::grad, Domain::frequency, 1.0}, {PriorKind::grad, Domain::time, 5.0}};
  return {ref, opt};
}

std::vector<ExperimentConfig> priors_demo(std::uint64_t seed) {
  ExperimentConfig l1 = base("l1_sparse", {WindowKind::itersine, 60, {}}, 15, 120, 240, 0, seed);
  l1.priors = {{PriorKind::l1, Domain::time, 1.0}};
  l1.solver.gamma = 1e-3;
  return {l1};
}

/// Closest point of the dual set to the span of the unit impulse, by
/// alternating projections started at 0. The two sets do not meet, so the
/// iteration stalls at the nearest pair and is reported as disjoint.
WindowResult span_distance(std::uint64_t seed) {
  ExperimentConfig cfg = base("span_distance", {WindowKind::itersine, 60, {}}, 15, 120, 240, 0, seed);
  const GaborParams p(cfg.a, cfg.M, cfg.L);
  const WRSystem wr(periodize(cfg.window.make(), cfg.L), p);
  RealVector dirac = RealVector::Zero(cfg.L);
  dirac[0] = 1.0;
  SolverConfig sc;
  sc.max_iter = 100000;
  sc.rel_tol = 1e-12;
  const PocsResult r = pocs({[&](const RealVector& v) { return project_span(v, dirac); },
                             [&](const RealVector& v) { return project_dual(v, wr); }},
                            sc, RealVector::Zero(cfg.L));
  WindowResult out;
  out.name = cfg.name;
  out.circular = r.x;
  out.Lh = cfg.L;
  out.status = r.converged ? "converged" : "disjoint";
  out.iterations = r.iterations;
  out.constraint_residual = wr.residual(r.x);
  out.residual = r.residual_trace;
  out.metrics = full_report(out.circular, out.Lh);
  return out;
}

long entries_above(const RealVector& x, double db) {
  const double threshold = std::pow(10.0, db / 20.0) * x.cwiseAbs().maxCoeff();
  return static_cast<long>((x.array().abs() > threshold).count());
}

long spikes(const RealVector& x) {
  const long L = x.size();
  const double top = x.cwiseAbs().maxCoeff();
  long count = 0;
  for (long l = 0; l < L; ++l) {
    const double curvature = x[l] - 0.5 * (x[wrap_index(l - 1, L)] + x[wrap_index(l + 1, L)]);
    if (std::abs(curvature) > 0.1 * top) ++count;
  }
  return count;
}

int run_tfedit(const std::filesystem::path& out, std::uint64_t seed, std::ostream& log);

}  // namespace

WindowResult solve(const ExperimentConfig& cfg) {
  cfg.validate();
  const Window g = cfg.window.make();
  const GaborParams p(cfg.a, cfg.M, cfg.L);
  const SupportSpec s = cfg.support_spec();
  switch (cfg.problem) {
    case Problem::dual: return from_report(cfg, design_dual(g, cfg.a, cfg.M, cfg.L, s, cfg.make_priors(), cfg.solver));
    case Problem::tight: return from_report(cfg, design_tight(g, cfg.a, cfg.M, cfg.L, s, cfg.make_priors(), cfg.solver));
    case Problem::truncation: {
      RealVector h = truncation_dual_circular(g, cfg.a, cfg.M, cfg.L, s);
      const double res = wr_residual(periodize(g, cfg.L), h, p);
      return closed_form(cfg, std::move(h), res);
    }
    case Problem::canonical: {
      const RealVector gL = periodize(g, cfg.L);
      RealVector h = canonical_dual(gL, p);
      const double res = wr_residual(gL, h, p);
      return closed_form(cfg, std::move(h), res);
    }
    case Problem::canonical_tight: {
      RealVector h = canonical_tight(periodize(g, cfg.L), p);
      const double res = tight_deviation(h, p);
      return closed_form(cfg, std::move(h), res);
    }
  }
  throw ConfigError("unknown problem");
}

std::vector<WindowResult> solve_all(const std::vector<ExperimentConfig>& cfgs) {
  std::vector<std::future<WindowResult>> jobs;
  jobs.reserve(cfgs.size());
  for (const ExperimentConfig& c : cfgs) jobs.push_back(std::async(std::launch::async, [&c] { return solve(c); }));
  std::vector<WindowResult> out;
  out.reserve(cfgs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"exp1", "exp2", "exp3", "tight", "priors-demo", "tfedit"};
  return names;
}

std::vector<ExperimentConfig> preset_configs(std::string_view preset, std::uint64_t seed) {
  if (preset == "exp1") return exp1(seed);
  if (preset == "exp2") return exp2(seed);
  if (preset == "exp3") return exp3(seed);
  if (preset == "tight") return tight(seed);
  if (preset == "priors-demo") return priors_demo(seed);
  if (preset == "tfedit") return {};
  throw ConfigError("unknown preset '" + std::string(preset) + "'");
}

int run_config(const ExperimentConfig& cfg, std::ostream& log) {
  const WindowResult r = solve(cfg);
  return finish(cfg.output, {r}, cfg.ambiguity, log, false);
}

int run_preset(std::string_view preset, const std::filesystem::path& out, std::uint64_t seed, std::ostream& log) {
  if (preset == "tfedit") return run_tfedit(out, seed, log);
  const std::vector<ExperimentConfig> cfgs = preset_configs(preset, seed);
  std::vector<WindowResult> results = solve_all(cfgs);

  if (preset == "priors-demo") {
    results.push_back(span_distance(seed));
    std::vector<std::vector<std::string>> rows;
    for (const WindowResult& r : results) {
      rows.push_back({r.name, std::to_string(entries_above(r.circular, -80.0)), std::to_string(spikes(r.circular))});
    }
    write_table_csv(out / "demo.csv", {"name", "entries_above_-80db", "spikes"}, rows);
    log << "l1_sparse: " << rows[0][1] << " entries above -80 dB; span_distance: " << rows[1][2] << " spikes\n";
  }

  if (preset == "exp1") {
    std::vector<std::string> header{"solution"};
    for (const ExperimentConfig& c : cfgs) header.push_back(c.name);
    std::vector<std::vector<std::string>> rows;
    log << "criterion values (row: solution, column: criterion)\n";
    for (const WindowResult& r : results) {
      std::vector<std::string> row{r.name};
      std::string line = r.name;
      line.resize(16, ' ');
      for (const ExperimentConfig& c : cfgs) {
        double v = 0.0;
        for (const Prior& prior : c.make_priors()) v += prior.evaluate(r.circular);
        row.push_back(format_number(v));
        char cell[32];
        std::snprintf(cell, sizeof cell, " %12.6g", v);
        line += cell;
      }
      rows.push_back(std::move(row));
      log << line << '\n';
    }
    write_table_csv(out / "criteria.csv", header, rows);
  }

  if (preset == "exp3") {
    const Window g = cfgs[0].window.make();
    std::vector<std::vector<std::string>> rows;
    const std::vector<long> lengths{240, 360, 480};
    for (const WindowResult& r : results) {
      const Window h = Window::from_circular(r.circular, r.Lh);
      const std::vector<double> res = verify_duality(g, h, cfgs[0].a, cfgs[0].M, lengths);
      for (std::size_t k = 0; k < lengths.size(); ++k) {
        rows.push_back({r.name, std::to_string(lengths[k]), format_number(res[k])});
      }
    }
    write_table_csv(out / "duality.csv", {"name", "L", "wr_residual"}, rows);
  }

  return finish(out, results, false, log, true);
}

int metrics_command(const std::filesystem::path& window_csv, long Lh, std::ostream& out) {
  if (Lh <= 0) throw ConfigError("--Lh must be positive");
  const RealVector x = read_window_csv(window_csv);
  const MetricsReport m = full_report(x, Lh);
  out << metrics_header() << '\n'
      << metrics_row(window_csv.parent_path().filename().string(), x.size(), Lh, "recomputed", 0, std::nan(""), m)
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

TfEditConfig::TfEditConfig() {
  solver.rel_tol = 1e-9;
}

bool in_mask(const TfEditConfig& cfg, long m, long n, long frame_dilation, long channel_dilation) {
  const long mm = std::min(m, cfg.M - m);
  return n >= cfg.frame_first - frame_dilation && n <= cfg.frame_last + frame_dilation &&
         mm >= cfg.channel_first - channel_dilation && mm <= cfg.channel_last + channel_dilation;
}

TfEditReport demo_tfedit(const TfEditConfig& cfg) {
  const long L = cfg.L;
  const GaborParams p(cfg.a, cfg.M, L);
  const Window g = cfg.window.make();
  const RealVector gL = periodize(g, L);
  const double pi = std::numbers::pi;

  TfEditReport rep;
  std::mt19937_64 rng(cfg.seed);
  rep.signal.resize(L);
  rep.target.resize(L);
  const double Ld = static_cast<double>(L);
  for (long l = 0; l < L; ++l) {
    const double t = static_cast<double>(l);
    const double up = std::cos(2.0 * pi * (0.05 * t + 0.075 * t * t / Ld));
    const double down = std::cos(2.0 * pi * (0.3 * t - 0.075 * t * t / Ld));
    const double envelope = std::exp(-std::pow((t - Ld / 2.0) / (Ld / 16.0), 2));
    const double tone = envelope * std::cos(2.0 * pi * 0.4 * t);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double noise = cfg.noise * (2.0 * u - 1.0);
    rep.target[l] = up + down + noise;
    rep.signal[l] = rep.target[l] + tone;
  }

  rep.canonical = canonical_dual(gL, p);
  ExperimentConfig oc = base("optimized", cfg.window, cfg.a, cfg.M, L, cfg.support, cfg.seed);
  oc.priors = {{PriorKind::weighted_l2_envar, Domain::time, 1.0}};
  oc.solver = cfg.solver;
  rep.optimized_result = solve(oc);
  rep.optimized = rep.optimized_result.circular;

  const ComplexVector f = rep.signal.cast<Complex>();
  const Coefficients c = analyze(gL, p, f);
  rep.mask = Coefficients::Zero(cfg.M, p.frames());
  Coefficients kept = c;
  for (long n = 0; n < p.frames(); ++n) {
    for (long m = 0; m < cfg.M; ++m) {
      if (in_mask(cfg, m, n)) {
        rep.mask(m, n) = 1.0;
        kept(m, n) = 0.0;
      }
    }
  }

  const double f_energy = rep.signal.squaredNorm();
  const Coefficients none = Coefficients::Zero(cfg.M, p.frames());
  auto evaluate = [&](const RealVector& h, RealVector& edited, double& zero_err, double& full_energy, double& leak) {
    zero_err = (synthesize(h, p, c) - f).norm() / std::sqrt(f_energy);
    full_energy = synthesize(h, p, none).squaredNorm();
    edited = synthesize(h, p, kept).real();
    const Coefficients err = analyze(gL, p, (edited - rep.target).cast<Complex>());
    double outside = 0.0;
    for (long n = 0; n < p.frames(); ++n) {
      for (long m = 0; m < cfg.M; ++m) {
        if (!in_mask(cfg, m, n, cfg.frame_dilation, cfg.channel_dilation)) outside += std::norm(err(m, n));
      }
    }
    leak = outside / f_energy;
  };
  evaluate(rep.canonical, rep.edited_canonical, rep.zero_mask_error_canonical, rep.full_mask_energy_canonical,
           rep.leakage_canonical);
  evaluate(rep.optimized, rep.edited_optimized, rep.zero_mask_error_optimized, rep.full_mask_energy_optimized,
           rep.leakage_optimized);
  return rep;
}

namespace {

void write_spectrogram(const std::filesystem::path& path, const Coefficients& c, double peak) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(c.size()));
  for (long n = 0; n < c.cols(); ++n) {
    for (long m = 0; m < c.rows(); ++m) {
      const double mag = std::abs(c(m, n));
      const double db = mag > 0.0 ? std::max(20.0 * std::log10(mag / peak), -400.0) : -400.0;
      rows.push_back({std::to_string(n), std::to_string(m), format_number(db)});
    }
  }
  write_table_csv(path, {"frame", "channel", "db"}, rows);
}

int run_tfedit(const std::filesystem::path& out, std::uint64_t seed, std::ostream& log) {
  TfEditConfig cfg;
  cfg.seed = seed;
  const TfEditReport rep = demo_tfedit(cfg);

  const GaborParams p(cfg.a, cfg.M, cfg.L);
  const RealVector gL = periodize(cfg.window.make(), cfg.L);
  const Coefficients original = analyze(gL, p, rep.signal.cast<Complex>());
  const double peak = original.cwiseAbs().maxCoeff();
  write_spectrogram(out / "spectrogram_signal.csv", original, peak);
  write_spectrogram(out / "spectrogram_target.csv", analyze(gL, p, rep.target.cast<Complex>()), peak);
  write_spectrogram(out / "spectrogram_canonical.csv", analyze(gL, p, rep.edited_canonical.cast<Complex>()), peak);
  write_spectrogram(out / "spectrogram_optimized.csv", analyze(gL, p, rep.edited_optimized.cast<Complex>()), peak);

  write_table_csv(out / "tfedit.csv",
                  {"dual", "zero_mask_error", "full_mask_energy", "leakage_outside_dilated_mask"},
                  {{"canonical", format_number(rep.zero_mask_error_canonical),
                    format_number(rep.full_mask_energy_canonical), format_number(rep.leakage_canonical)},
                   {"optimized", format_number(rep.zero_mask_error_optimized),
                    format_number(rep.full_mask_energy_optimized), format_number(rep.leakage_optimized)}});

  WindowResult can;
  can.name = "canonical";
  can.circular = rep.canonical;
  can.Lh = cfg.support;
  can.constraint_residual = wr_residual(gL, rep.canonical, p);
  can.metrics = full_report(can.circular, can.Lh);
  log << "leakage outside the dilated mask: canonical " << sci(rep.leakage_canonical) << ", optimized "
      << sci(rep.leakage_optimized) << '\n';
  return finish(out, {can, rep.optimized_result}, false, log, true);
}

}  // namespace

}  // namespace gabdual::cli
