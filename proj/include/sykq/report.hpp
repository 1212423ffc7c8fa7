#pragma once

// Comparison tables: exact oracle values next to Monte Carlo estimates and
// asymptotic predictions, rendered as an aligned text table, machine CSV
// (round-trippable), or JSON.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sykq/qmoments.hpp"
#include "sykq/rational.hpp"

namespace sykq {

struct ComparisonRow {
  std::string label;
  std::optional<Rational> oracle;      // exact value when one exists
  std::optional<double> oracle_float;  // floating rendering of the oracle
  std::optional<double> mc;
  std::optional<double> mc_stderr;
  std::optional<double> asymptotic;

  // (mc - oracle)/stderr; present only when all three inputs are and stderr > 0
  std::optional<double> z() const;

  bool operator==(const ComparisonRow&) const = default;
};

ComparisonRow make_row(std::string label, const Rational& oracle);
ComparisonRow make_row(std::string label, double oracle_float);

// Fixed schema: label,oracle_num,oracle_den,oracle_float,mc,stderr,z,asymptotic
// preceded by a `# seed=` comment when a seed is supplied.  Floats print as
// %.17g so the file re-parses to bit-identical rows.
void write_csv(std::ostream& out, const std::vector<ComparisonRow>& rows,
               std::optional<std::uint64_t> seed = std::nullopt);
std::string csv_string(const std::vector<ComparisonRow>& rows,
                       std::optional<std::uint64_t> seed = std::nullopt);

struct ParsedCsv {
  std::vector<ComparisonRow> rows;
  std::optional<std::uint64_t> seed;
};
ParsedCsv parse_csv(std::istream& in);
ParsedCsv parse_csv_string(const std::string& text);

// Aligned human-readable table; rows with |z| > 3 carry a *** marker column.
std::string render_table(const std::vector<ComparisonRow>& rows);

// {"target":..., "estimate":..., "stderr":..., "n_samples":..., "model":{"n":..,"q_n":..}, "seed":...}
std::string estimate_json(const std::string& target, double estimate, double std_error,
                          long long n_samples, const FiniteModel& model, std::uint64_t seed);

// {"num":15,"den":7,"float":2.142857...}
std::string rational_json(const Rational& r);

// JSON array mirroring the CSV schema, for --format json output.
std::string rows_json(const std::vector<ComparisonRow>& rows,
                      std::optional<std::uint64_t> seed = std::nullopt);

// %.17g rendering shared by all writers.
std::string format_double(double v);

}  // namespace sykq
