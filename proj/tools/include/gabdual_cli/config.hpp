#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <gabdual/gabdual.hpp>

namespace gabdual::cli {

/// Malformed or inconsistent experiment configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// dual: PPXA over supported duals; tight: Parseval heuristic; truncation:
/// least-norm supported dual; canonical: S^{-1} g; canonical_tight: S^{-1/2} g.
enum class Problem { dual, tight, truncation, canonical, canonical_tight };

Problem parse_problem(std::string_view name);
std::string_view to_string(Problem problem);

struct WindowSpec {
  WindowKind kind = WindowKind::itersine;
  long length = 0;
  WindowParams params;

  [[nodiscard]] Window make() const { return make_window(kind, length, params); }
};

struct PriorSpec {
  PriorKind kind = PriorKind::l2;
  Domain domain = Domain::time;
  double lambda = 1.0;
};

struct ExperimentConfig {
  std::string name = "window";
  WindowSpec window;
  long a = 0;
  long M = 0;
  long L = 0;
  /// Support length L_h; 0 means the whole index range.
  long support = 0;
  Problem problem = Problem::dual;
  std::vector<PriorSpec> priors;
  SolverConfig solver;
  std::filesystem::path output = ".";
  bool ambiguity = false;

  [[nodiscard]] SupportSpec support_spec() const;
  [[nodiscard]] long support_length() const { return support > 0 ? support : L; }
  [[nodiscard]] std::vector<Prior> make_priors() const;
  /// Throws ConfigError on violated lattice, support or prior constraints.
  void validate() const;
};

/// Parses the line-oriented `key = value` format with `[section]` headers
/// described in the README. Errors carry the offending line number.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gabdual::cli
