#pragma once

// Experiment configs: flat key = value text files (optional [kind] section
// headers), fully validated before any compute starts.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sykq/qmoments.hpp"
#include "sykq/sykmc.hpp"

namespace sykq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  enum class Kind { moments, fluctuations, process, fock, cauchy, convergence };
  enum class Format { csv, json };

  Kind kind = Kind::moments;

  // single-model kinds
  int n = 0;
  int q_n = 0;
  // convergence sweep
  std::vector<std::pair<int, int>> models;

  std::vector<int> eps;
  std::vector<int> sizes;
  std::vector<double> times;
  std::string pi = "{1,3}{2,4}";  // convergence pairing

  std::optional<double> q_override;  // fock/cauchy q value
  int colors = 2;                    // fock alphabet size
  int k_max = 6;                     // fock/cauchy max word length
  int depth = 500;                   // continued-fraction depth
  double z_imag = 1.0;
  double z_real_min = -3.0;
  double z_real_max = 3.0;
  int z_steps = 61;

  EstimatorConfig est;
  bool mc_enabled = true;
  std::optional<std::uint64_t> budget;  // trace-eval cap override

  std::string out_dir = ".";
  Format format = Format::csv;

  FiniteModel model() const { return FiniteModel{n, q_n}; }
  EvalBudget eval_budget() const;

  // throws ConfigError listing every violated field
  void validate() const;
};

const char* kind_name(ExperimentConfig::Kind k);

// Parses `key = value` lines; `#` and `;` start comments; a `[name]` header
// sets the kind.  Unknown keys, duplicates, and type errors are reported with
// their line number.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace sykq
