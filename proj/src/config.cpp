#include "sykq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sykq {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

long long to_int(const std::string& v, int line, const std::string& key) {
  try {
    size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(line, key + ": expected integer, got '" + v + "'");
  }
}

double to_real(const std::string& v, int line, const std::string& key) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(line, key + ": expected number, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(v);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

ExperimentConfig::Kind parse_kind(const std::string& v, int line) {
  if (v == "moments") return ExperimentConfig::Kind::moments;
  if (v == "fluctuations" || v == "fluct") return ExperimentConfig::Kind::fluctuations;
  if (v == "process") return ExperimentConfig::Kind::process;
  if (v == "fock") return ExperimentConfig::Kind::fock;
  if (v == "cauchy") return ExperimentConfig::Kind::cauchy;
  if (v == "convergence" || v == "converge") return ExperimentConfig::Kind::convergence;
  fail(line, "unknown kind '" + v + "'");
}

}  // namespace

const char* kind_name(ExperimentConfig::Kind k) {
  switch (k) {
    case ExperimentConfig::Kind::moments: return "moments";
    case ExperimentConfig::Kind::fluctuations: return "fluctuations";
    case ExperimentConfig::Kind::process: return "process";
    case ExperimentConfig::Kind::fock: return "fock";
    case ExperimentConfig::Kind::cauchy: return "cauchy";
    case ExperimentConfig::Kind::convergence: return "convergence";
  }
  return "?";
}

EvalBudget ExperimentConfig::eval_budget() const {
  EvalBudget b;
  if (budget) b.max_trace_evals = *budget;
  b.threads = est.threads;
  return b;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  bool kind_set = false;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    size_t cut = s.find_first_of("#;");
    if (cut != std::string::npos) s = s.substr(0, cut);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      cfg.kind = parse_kind(trim(s.substr(1, s.size() - 2)), line);
      kind_set = true;
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (val.empty()) fail(line, key + ": empty value");
    if (auto it = seen.find(key); it != seen.end())
      fail(line, key + ": duplicate key (first set on line " + std::to_string(it->second) + ")");
    seen[key] = line;

    if (key == "kind") {
      cfg.kind = parse_kind(val, line);
      kind_set = true;
    } else if (key == "n") {
      cfg.n = static_cast<int>(to_int(val, line, key));
    } else if (key == "q_n") {
      cfg.q_n = static_cast<int>(to_int(val, line, key));
    } else if (key == "models") {
      for (const auto& item : split(val, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2) fail(line, "models: expected n:q_n entries, got '" + item + "'");
        cfg.models.emplace_back(static_cast<int>(to_int(parts[0], line, key)),
                                static_cast<int>(to_int(parts[1], line, key)));
      }
    } else if (key == "eps") {
      for (const auto& item : split(val, ','))
        cfg.eps.push_back(static_cast<int>(to_int(item, line, key)));
    } else if (key == "sizes") {
      for (const auto& item : split(val, ','))
        cfg.sizes.push_back(static_cast<int>(to_int(item, line, key)));
    } else if (key == "times") {
      for (const auto& item : split(val, ',')) cfg.times.push_back(to_real(item, line, key));
    } else if (key == "pi") {
      cfg.pi = val;
    } else if (key == "q") {
      cfg.q_override = to_real(val, line, key);
    } else if (key == "colors") {
      cfg.colors = static_cast<int>(to_int(val, line, key));
    } else if (key == "k_max") {
      cfg.k_max = static_cast<int>(to_int(val, line, key));
    } else if (key == "depth") {
      cfg.depth = static_cast<int>(to_int(val, line, key));
    } else if (key == "z_imag") {
      cfg.z_imag = to_real(val, line, key);
    } else if (key == "z_real_min") {
      cfg.z_real_min = to_real(val, line, key);
    } else if (key == "z_real_max") {
      cfg.z_real_max = to_real(val, line, key);
    } else if (key == "z_steps") {
      cfg.z_steps = static_cast<int>(to_int(val, line, key));
    } else if (key == "n_samples") {
      cfg.est.n_samples = to_int(val, line, key);
    } else if (key == "batches") {
      cfg.est.batches = static_cast<int>(to_int(val, line, key));
    } else if (key == "probes") {
      cfg.est.probes = static_cast<int>(to_int(val, line, key));
    } else if (key == "seed") {
      cfg.est.seed = static_cast<std::uint64_t>(to_int(val, line, key));
    } else if (key == "threads") {
      cfg.est.threads = static_cast<int>(to_int(val, line, key));
    } else if (key == "mode") {
      if (val == "dense") cfg.est.mode = EstimatorConfig::Mode::dense;
      else if (val == "hutchinson") cfg.est.mode = EstimatorConfig::Mode::hutchinson;
      else fail(line, "mode: expected dense or hutchinson");
    } else if (key == "law") {
      if (val == "gaussian") cfg.est.law = CouplingLaw::gaussian;
      else if (val == "rademacher") cfg.est.law = CouplingLaw::rademacher;
      else fail(line, "law: expected gaussian or rademacher");
    } else if (key == "mc") {
      if (val == "on" || val == "true") cfg.mc_enabled = true;
      else if (val == "off" || val == "false") cfg.mc_enabled = false;
      else fail(line, "mc: expected on/off");
    } else if (key == "budget") {
      long long b = to_int(val, line, key);
      if (b <= 0) fail(line, "budget: must be positive");
      cfg.budget = static_cast<std::uint64_t>(b);
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "format") {
      if (val == "csv") cfg.format = ExperimentConfig::Format::csv;
      else if (val == "json") cfg.format = ExperimentConfig::Format::json;
      else fail(line, "format: expected csv or json");
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (!kind_set) throw ConfigError("config does not set a kind");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_experiment_config(buf.str());
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  auto need_model = [&](int mn, int mq, const std::string& where) {
    if (mn < 2 || mn % 2 != 0) problems.push_back(where + ": n must be even and >= 2");
    else if (mq < 1 || 2 * mq > mn)
      problems.push_back(where + ": q_n must satisfy 1 <= q_n <= n/2");
    if (mn > 64) problems.push_back(where + ": n must be <= 64");
  };
  bool single_model = kind == Kind::moments || kind == Kind::fluctuations ||
                      kind == Kind::process;
  if (single_model) need_model(n, q_n, "model");

  switch (kind) {
    case Kind::moments:
      if (eps.empty()) problems.push_back("moments: eps word required");
      break;
    case Kind::fluctuations: {
      if (sizes.empty()) problems.push_back("fluctuations: sizes required");
      int total = 0;
      for (int s : sizes) {
        if (s < 1) problems.push_back("fluctuations: sizes must be positive");
        total += s;
      }
      if (!eps.empty() && static_cast<int>(eps.size()) != total)
        problems.push_back("fluctuations: eps length must equal sum of sizes");
      break;
    }
    case Kind::process:
      if (times.empty()) problems.push_back("process: times required");
      for (double t : times)
        if (t < 0) problems.push_back("process: times must be nonnegative");
      break;
    case Kind::fock:
      if (colors < 1 || colors > 4) problems.push_back("fock: colors must be in 1..4");
      if (k_max < 1 || k_max > 10) problems.push_back("fock: k_max must be in 1..10");
      if (q_override && std::abs(*q_override) >= 1.0)
        problems.push_back("fock: |q| < 1 required (q = +-1 is served by the pairing sum)");
      break;
    case Kind::cauchy:
      if (q_override && std::abs(*q_override) > 1.0)
        problems.push_back("cauchy: |q| <= 1 required");
      if (depth < 1) problems.push_back("cauchy: depth must be >= 1");
      if (!(z_imag > 0)) problems.push_back("cauchy: z_imag must be > 0");
      if (z_steps < 1) problems.push_back("cauchy: z_steps must be >= 1");
      if (z_steps > 1 && !(z_real_max > z_real_min))
        problems.push_back("cauchy: z_real_max must exceed z_real_min");
      break;
    case Kind::convergence:
      if (models.empty()) problems.push_back("convergence: models list required");
      for (const auto& [mn, mq] : models)
        need_model(mn, mq, "models entry (" + std::to_string(mn) + ":" + std::to_string(mq) + ")");
      break;
  }
  for (int e : eps)
    if (e < 1) {
      problems.push_back("eps: colors are 1-based positive integers");
      break;
    }
  if (est.n_samples < 1) problems.push_back("n_samples must be >= 1");
  if (est.batches < 2) problems.push_back("batches must be >= 2");
  if (est.n_samples < est.batches) problems.push_back("n_samples must be >= batches");
  if (est.probes < 1) problems.push_back("probes must be >= 1");
  if (est.threads < 0) problems.push_back("threads must be >= 0 (0 = hardware)");

  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

}  // namespace sykq
