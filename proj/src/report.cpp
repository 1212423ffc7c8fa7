#include "sykq/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sykq {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string quote_if_needed(const std::string& field) {
  bool needs = field.find_first_of(",\"\n") != std::string::npos || (!field.empty() &&
               (field.front() == ' ' || field.back() == ' '));
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

// Splits one CSV line honoring double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad float field: " + s);
  return v;
}

constexpr const char* kHeader = "label,oracle_num,oracle_den,oracle_float,mc,stderr,z,asymptotic";

std::string table_cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", *v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> ComparisonRow::z() const {
  if (!mc || !oracle_float || !mc_stderr || !(*mc_stderr > 0)) return std::nullopt;
  return (*mc - *oracle_float) / *mc_stderr;
}

ComparisonRow make_row(std::string label, const Rational& oracle) {
  ComparisonRow r;
  r.label = std::move(label);
  r.oracle = oracle;
  r.oracle_float = oracle.to_double();
  return r;
}

ComparisonRow make_row(std::string label, double oracle_float) {
  ComparisonRow r;
  r.label = std::move(label);
  r.oracle_float = oracle_float;
  return r;
}

void write_csv(std::ostream& out, const std::vector<ComparisonRow>& rows,
               std::optional<std::uint64_t> seed) {
  if (seed) out << "# seed=" << *seed << "\n";
  out << kHeader << "\n";
  for (const auto& r : rows) {
    out << quote_if_needed(r.label) << ',';
    if (r.oracle) out << r.oracle->num << ',' << r.oracle->den << ',';
    else out << ",,";
    out << opt_str(r.oracle_float) << ',' << opt_str(r.mc) << ',' << opt_str(r.mc_stderr) << ','
        << opt_str(r.z()) << ',' << opt_str(r.asymptotic) << "\n";
  }
}

std::string csv_string(const std::vector<ComparisonRow>& rows,
                       std::optional<std::uint64_t> seed) {
  std::ostringstream os;
  write_csv(os, rows, seed);
  return os.str();
}

ParsedCsv parse_csv(std::istream& in) {
  ParsedCsv out;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# seed=";
      if (line.rfind(tag, 0) == 0) out.seed = std::stoull(line.substr(tag.size()));
      continue;
    }
    if (!saw_header) {
      if (line != kHeader) throw std::invalid_argument("unexpected CSV header: " + line);
      saw_header = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 8) throw std::invalid_argument("expected 8 CSV fields, got line: " + line);
    ComparisonRow r;
    r.label = f[0];
    if (!f[1].empty() || !f[2].empty()) {
      if (f[1].empty() || f[2].empty())
        throw std::invalid_argument("oracle_num/oracle_den must be both present or both empty");
      r.oracle = Rational(std::stoll(f[1]), std::stoll(f[2]));
    }
    r.oracle_float = parse_opt_double(f[3]);
    r.mc = parse_opt_double(f[4]);
    r.mc_stderr = parse_opt_double(f[5]);
    parse_opt_double(f[6]);  // z is derived; validated but not stored
    r.asymptotic = parse_opt_double(f[7]);
    out.rows.push_back(std::move(r));
  }
  if (!saw_header) throw std::invalid_argument("CSV input has no header line");
  return out;
}

ParsedCsv parse_csv_string(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

std::string render_table(const std::vector<ComparisonRow>& rows) {
  const std::vector<std::string> head = {"label", "oracle", "float", "mc", "stderr",
                                         "z", "asymptotic", ""};
  std::vector<std::vector<std::string>> cells;
  cells.push_back(head);
  for (const auto& r : rows) {
    auto zv = r.z();
    cells.push_back({r.label,
                     r.oracle ? r.oracle->to_string() : "",
                     table_cell(r.oracle_float),
                     table_cell(r.mc),
                     table_cell(r.mc_stderr),
                     table_cell(zv),
                     table_cell(r.asymptotic),
                     (zv && std::abs(*zv) > 3.0) ? "***" : ""});
  }
  std::vector<size_t> width(head.size(), 0);
  for (const auto& row : cells)
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string estimate_json(const std::string& target, double estimate, double std_error,
                          long long n_samples, const FiniteModel& model, std::uint64_t seed) {
  ordered_json j;
  j["target"] = target;
  j["estimate"] = estimate;
  j["stderr"] = std_error;
  j["n_samples"] = n_samples;
  j["model"] = {{"n", model.n}, {"q_n", model.q_n}};
  j["seed"] = seed;
  return j.dump(2);
}

std::string rational_json(const Rational& r) {
  ordered_json j;
  j["num"] = r.num;
  j["den"] = r.den;
  j["float"] = r.to_double();
  return j.dump();
}

std::string rows_json(const std::vector<ComparisonRow>& rows,
                      std::optional<std::uint64_t> seed) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["label"] = r.label;
    if (r.oracle) {
      j["oracle"] = {{"num", r.oracle->num}, {"den", r.oracle->den},
                     {"float", r.oracle->to_double()}};
    } else {
      j["oracle"] = nullptr;
    }
    if (r.oracle_float) j["oracle_float"] = *r.oracle_float; else j["oracle_float"] = nullptr;
    if (r.mc) j["mc"] = *r.mc; else j["mc"] = nullptr;
    if (r.mc_stderr) j["stderr"] = *r.mc_stderr; else j["stderr"] = nullptr;
    if (auto zv = r.z()) j["z"] = *zv; else j["z"] = nullptr;
    if (r.asymptotic) j["asymptotic"] = *r.asymptotic; else j["asymptotic"] = nullptr;
    arr.push_back(std::move(j));
  }
  ordered_json top;
  if (seed) top["seed"] = *seed;
  top["rows"] = std::move(arr);
  return top.dump(2);
}

}  // namespace sykq
