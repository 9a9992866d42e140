#include "gabdual_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>

namespace gabdual::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

class Parser {
 public:
  Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  void set_line(int line) { line_ = line; }

  double number(const std::string& key, const std::string& v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail("'" + key + "' expects a number, got '" + v + "'");
    return out;
  }

  long integer(const std::string& key, const std::string& v) const {
    long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail("'" + key + "' expects an integer, got '" + v + "'");
    return out;
  }

  bool boolean(const std::string& key, const std::string& v) const {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail("'" + key + "' expects true or false, got '" + v + "'");
  }

  std::vector<double> list(const std::string& key, const std::string& v) const {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v.size()) {
      const auto comma = v.find(',', start);
      const std::string item = trim(std::string_view(v).substr(start, comma - start));
      out.push_back(number(key, item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  template <typename F>
  auto enumerated(const std::string& key, const std::string& v, F&& parse) const {
    try {
      return parse(v);
    } catch (const InvalidArgument& e) {
      fail("'" + key + "': " + e.what());
    }
  }

 private:
  std::string source_;
  int line_ = 0;
};

}  // namespace

Problem parse_problem(std::string_view name) {
  if (name == "dual") return Problem::dual;
  if (name == "tight") return Problem::tight;
  if (name == "truncation") return Problem::truncation;
  if (name == "canonical") return Problem::canonical;
  if (name == "canonical_tight") return Problem::canonical_tight;
  throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

std::string_view to_string(Problem problem) {
  switch (problem) {
    case Problem::dual: return "dual";
    case Problem::tight: return "tight";
    case Problem::truncation: return "truncation";
    case Problem::canonical: return "canonical";
    case Problem::canonical_tight: return "canonical_tight";
  }
  return "?";
}

SupportSpec ExperimentConfig::support_spec() const {
  return support > 0 ? SupportSpec::centered(support) : SupportSpec::full(L);
}

std::vector<Prior> ExperimentConfig::make_priors() const {
  std::vector<Prior> out;
  out.reserve(priors.size());
  for (const PriorSpec& p : priors) out.emplace_back(p.kind, p.domain, p.lambda);
  return out;
}

void ExperimentConfig::validate() const {
  if (window.length <= 0) throw ConfigError("window.length must be positive");
  if (a <= 0 || M <= 0 || L <= 0) throw ConfigError("lattice: a, M and L must be positive");
  if (L % a != 0 || L % M != 0) throw ConfigError("lattice: a and M must divide L");
  if (window.length > L) throw ConfigError("window.length exceeds L");
  if (support < 0 || support > L) throw ConfigError("support.length must lie in [0, L]");
  for (const PriorSpec& p : priors) {
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) throw ConfigError("prior lambda must be a finite number >= 0");
  }
  if ((problem == Problem::dual || problem == Problem::tight) && priors.empty()) {
    throw ConfigError("problem '" + std::string(to_string(problem)) + "' needs at least one [prior]");
  }
  if (name.empty() || name.find_first_of("/\\,\n") != std::string::npos) {
    throw ConfigError("output.name must be nonempty and free of '/', '\\' and ','");
  }
  try {
    make_window(window.kind, window.length, window.params);
    const std::size_t terms = priors.size() + (problem == Problem::tight ? 2 : 1);
    solver.validate(terms);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  static const std::set<std::string> known_sections{"window", "lattice", "support", "prior", "solver", "output"};
  ExperimentConfig cfg;
  Parser P(source);
  std::string section;
  std::set<std::string> seen;  // "section.key", reset per [prior]
  std::set<std::string> singletons;
  PriorSpec* prior = nullptr;
  std::map<std::string, int> required{{"window.kind", 0}, {"window.length", 0}, {"lattice.a", 0},
                                      {"lattice.M", 0},   {"lattice.L", 0}};

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    P.set_line(++line);
    std::string text = raw;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    text = trim(text);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') P.fail("malformed section header");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (!known_sections.contains(section)) P.fail("unknown section [" + section + "]");
      if (section == "prior") {
        cfg.priors.emplace_back();
        prior = &cfg.priors.back();
        for (auto it = seen.begin(); it != seen.end();) it = it->starts_with("prior.") ? seen.erase(it) : std::next(it);
      } else if (!singletons.insert(section).second) {
        P.fail("section [" + section + "] appears twice");
      }
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) P.fail("expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) P.fail("empty key");
    if (value.empty()) P.fail("empty value for '" + key + "'");
    if (section.empty()) P.fail("'" + key + "' appears before any section");
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) P.fail("duplicate key '" + full + "'");
    if (auto it = required.find(full); it != required.end()) it->second = line;

    if (section == "window") {
      if (key == "kind") {
        cfg.window.kind = P.enumerated(key, value, parse_window_kind);
      } else if (key == "length") {
        cfg.window.length = P.integer(key, value);
      } else {
        cfg.window.params[key] = P.number(key, value);
      }
    } else if (section == "lattice") {
      if (key == "a") {
        cfg.a = P.integer(key, value);
      } else if (key == "M") {
        cfg.M = P.integer(key, value);
      } else if (key == "L") {
        cfg.L = P.integer(key, value);
      } else {
        P.fail("unknown key '" + full + "'");
      }
    } else if (section == "support") {
      if (key != "length") P.fail("unknown key '" + full + "'");
      cfg.support = P.integer(key, value);
    } else if (section == "prior") {
      if (key == "kind") {
        prior->kind = P.enumerated(key, value, parse_prior_kind);
      } else if (key == "domain") {
        prior->domain = P.enumerated(key, value, parse_domain);
      } else if (key == "lambda") {
        prior->lambda = P.number(key, value);
      } else {
        P.fail("unknown key '" + full + "'");
      }
    } else if (section == "solver") {
      SolverConfig& s = cfg.solver;
      if (key == "problem") {
        cfg.problem = P.enumerated(key, value, parse_problem);
      } else if (key == "gamma") {
        s.gamma = P.number(key, value);
      } else if (key == "max_iter") {
        s.max_iter = static_cast<int>(P.integer(key, value));
      } else if (key == "rel_tol") {
        s.rel_tol = P.number(key, value);
      } else if (key == "relaxation") {
        s.relaxation = P.number(key, value);
      } else if (key == "weights") {
        s.weights = P.list(key, value);
      } else if (key == "admm_inner_iter") {
        s.admm_inner_iter = static_cast<int>(P.integer(key, value));
      } else if (key == "feasibility_tol") {
        s.feasibility_tol = P.number(key, value);
      } else if (key == "seed") {
        const long seed = P.integer(key, value);
        if (seed < 0) P.fail("'seed' must be nonnegative");
        s.seed = static_cast<std::uint64_t>(seed);
      } else {
        P.fail("unknown key '" + full + "'");
      }
    } else if (section == "output") {
      if (key == "dir") {
        cfg.output = value;
      } else if (key == "name") {
        cfg.name = value;
      } else if (key == "ambiguity") {
        cfg.ambiguity = P.boolean(key, value);
      } else {
        P.fail("unknown key '" + full + "'");
      }
    }
  }

  for (const auto& [key, at] : required) {
    if (at == 0) throw ConfigError(source + ": missing required key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

}  // namespace gabdual::cli
