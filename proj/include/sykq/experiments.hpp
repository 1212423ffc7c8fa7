#pragma once

// Batch experiment runner behind the CLI: dispatches a validated config to
// the oracles and Monte Carlo estimators, prints the comparison table, and
// writes CSV/JSON artifacts.

#include <iosfwd>
#include <string>
#include <vector>

#include "sykq/config.hpp"
#include "sykq/report.hpp"

namespace sykq {

struct ExperimentArtifacts {
  std::vector<ComparisonRow> rows;      // empty for the cauchy grid kind
  std::vector<std::string> files;       // paths written
};

// Runs one experiment, printing the human table to `log` and writing
// artifacts under cfg.out_dir.  Throws on compute-budget refusal or I/O
// failure; the CLI maps exceptions to nonzero exits.
ExperimentArtifacts run_experiment(const ExperimentConfig& cfg, std::ostream& log);

// Exact-property suite (string algebra, pairing-sum triangle, endpoint
// moment laws).  Prints one line per check; returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace sykq
