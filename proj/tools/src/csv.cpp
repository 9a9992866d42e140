#include "gabdual_cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gabdual::cli {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_window_csv(const std::filesystem::path& path, const RealVector& circular) {
  auto out = open_out(path);
  const long L = circular.size();
  const IndexInterval range = centered_range(L);
  out << "index,value\n";
  for (long l = range.first; l <= range.last; ++l) out << l << ',' << format_number(circular[wrap_index(l, L)]) << '\n';
}

void write_spectrum_csv(const std::filesystem::path& path, const RealVector& circular) {
  auto out = open_out(path);
  const RealVector db = to_db(padded_spectrum(circular));
  const long N = db.size();
  const IndexInterval range = centered_range(N);
  out << "frequency,db\n";
  for (long k = range.first; k <= range.last; ++k) {
    out << format_number(static_cast<double>(k) / static_cast<double>(N)) << ',' << format_number(db[wrap_index(k, N)])
        << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& objective,
                     const std::vector<double>& residual) {
  auto out = open_out(path);
  out << "iteration,objective,residual\n";
  const std::size_t n = std::max(objective.size(), residual.size());
  const double nan = std::nan("");
  for (std::size_t k = 0; k < n; ++k) {
    out << k + 1 << ',' << format_number(k < objective.size() ? objective[k] : nan) << ','
        << format_number(k < residual.size() ? residual[k] : nan) << '\n';
  }
}

void write_ambiguity_csv(const std::filesystem::path& path, const RealVector& circular) {
  auto out = open_out(path);
  const ComplexMatrix A = ambiguity(circular);
  const long L = circular.size();
  const double peak = A.cwiseAbs().maxCoeff();
  out << "time,frequency,db\n";
  for (long n = 0; n < L; ++n) {
    for (long m = 0; m < L; ++m) {
      const double mag = std::abs(A(m, n));
      const double db = mag > 0.0 ? std::max(20.0 * std::log10(mag / peak), -400.0) : -400.0;
      out << n - L / 2 << ',' << m - L / 2 << ',' << format_number(db) << '\n';
    }
  }
}

std::string metrics_header() {
  std::string h = "name,L,Lh,status,iterations,constraint_residual";
  for (const std::string& f : MetricsReport::field_names()) h += "," + f;
  return h;
}

std::string metrics_row(const std::string& name, long L, long Lh, const std::string& status, int iterations,
                        double constraint_residual, const MetricsReport& m) {
  std::ostringstream row;
  row << name << ',' << L << ',' << Lh << ',' << status << ',' << iterations << ',' << format_number(constraint_residual);
  for (double v : m.values()) row << ',' << format_number(v);
  return row.str();
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<WindowResult>& results) {
  auto out = open_out(path);
  out << metrics_header() << '\n';
  for (const WindowResult& r : results) {
    out << metrics_row(r.name, r.circular.size(), r.Lh, r.status, r.iterations, r.constraint_residual, r.metrics)
        << '\n';
  }
}

RealVector read_window_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "index,value") throw Error(path.string() + ": expected header 'index,value'");
  std::vector<long> idx;
  std::vector<double> val;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    try {
      std::size_t used = 0;
      idx.push_back(std::stol(line.substr(0, comma), &used));
      if (used != comma) throw std::invalid_argument("index");
      const std::string v = line.substr(comma + 1);
      val.push_back(std::stod(v, &used));
      if (used != v.size()) throw std::invalid_argument("value");
    } catch (const std::logic_error&) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  const long L = static_cast<long>(idx.size());
  if (L == 0) throw Error(path.string() + ": no samples");
  const IndexInterval range = centered_range(L);
  RealVector x(L);
  for (long i = 0; i < L; ++i) {
    if (idx[i] != range.first + i) throw Error(path.string() + ": indices must run over the centered range in order");
    x[wrap_index(idx[i], L)] = val[i];
  }
  return x;
}

void write_window_files(const std::filesystem::path& dir, const WindowResult& r, bool ambiguity) {
  write_window_csv(dir / "window.csv", r.circular);
  write_spectrum_csv(dir / "spectrum.csv", r.circular);
  write_trace_csv(dir / "trace.csv", r.objective, r.residual);
  if (ambiguity) write_ambiguity_csv(dir / "ambiguity.csv", r.circular);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace gabdual::cli
