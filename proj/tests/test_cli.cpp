#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sykq/config.hpp"
#include "sykq/experiments.hpp"
#include "sykq/report.hpp"

using namespace sykq;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SYKQ_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) r.output += buf;
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

const char* kMomentsConfig =
    "kind = moments\n"
    "n = 6\n"
    "q_n = 2\n"
    "eps = 1,1,1,1\n"
    "n_samples = 400\n"
    "batches = 4\n"
    "seed = 5\n";

}  // namespace

TEST_CASE("comparison row z score") {
  ComparisonRow row = make_row("x", Rational(15, 7));
  CHECK(row.oracle == Rational(15, 7));
  CHECK(row.oracle_float == doctest::Approx(15.0 / 7.0));
  CHECK(!row.z().has_value());

  row.mc = 15.0 / 7.0 + 0.02;
  row.mc_stderr = 0.01;
  REQUIRE(row.z().has_value());
  CHECK(*row.z() == doctest::Approx(2.0).epsilon(1e-9));

  row.mc_stderr = 0.0;
  CHECK(!row.z().has_value());

  ComparisonRow plain = make_row("y", 0.25);
  CHECK(!plain.oracle.has_value());
  CHECK(plain.oracle_float == 0.25);
}

TEST_CASE("csv round trip") {
  std::vector<ComparisonRow> rows;
  ComparisonRow a = make_row("moment (8,2) eps=1,1,1,1", Rational(15, 7));
  a.mc = 2.1412345678901234;
  a.mc_stderr = 0.0123;
  a.asymptotic = 2.3678794411714423;
  rows.push_back(a);

  ComparisonRow b = make_row("label, with \"quotes\"", 0.125);
  rows.push_back(b);

  ComparisonRow c;
  c.label = "bare";
  rows.push_back(c);

  std::string text = csv_string(rows, 12345);
  CHECK(text.rfind("# seed=12345\n", 0) == 0);
  CHECK(text.find("label,oracle_num,oracle_den,oracle_float,mc,stderr,z,asymptotic\n") !=
        std::string::npos);
  CHECK(text.find("\"label, with \"\"quotes\"\"\"") != std::string::npos);

  ParsedCsv parsed = parse_csv_string(text);
  REQUIRE(parsed.seed.has_value());
  CHECK(*parsed.seed == 12345);
  REQUIRE(parsed.rows.size() == 3);
  CHECK(parsed.rows[0] == rows[0]);
  CHECK(parsed.rows[1] == rows[1]);
  CHECK(parsed.rows[2] == rows[2]);

  CHECK(csv_string(parsed.rows, parsed.seed) == text);

  std::string no_seed = csv_string(rows);
  CHECK(no_seed.rfind("label,", 0) == 0);
  CHECK(!parse_csv_string(no_seed).seed.has_value());

  CHECK_THROWS(parse_csv_string("wrong,header\n1,2\n"));
  CHECK_THROWS(parse_csv_string(
      "label,oracle_num,oracle_den,oracle_float,mc,stderr,z,asymptotic\nshort,1,2\n"));
}

TEST_CASE("rendered table") {
  ComparisonRow good = make_row("good", Rational(2));
  good.mc = 2.001;
  good.mc_stderr = 0.01;
  ComparisonRow bad = make_row("bad", Rational(2));
  bad.mc = 2.5;
  bad.mc_stderr = 0.01;
  ComparisonRow hole = make_row("hole", Rational(1, 3));

  std::string table = render_table({good, bad, hole});
  CHECK(table.find("***") != std::string::npos);
  CHECK(table.find("label") != std::string::npos);
  CHECK(table.find("nan") == std::string::npos);
  CHECK(table.find(" \n") == std::string::npos);

  std::string clean = render_table({good, hole});
  CHECK(clean.find("***") == std::string::npos);
}

TEST_CASE("json emitters") {
  std::string est = estimate_json("moment (8,2) eps=1,1", 1.002, 0.003, 1000,
                                  FiniteModel(8, 2), 42);
  auto j = nlohmann::json::parse(est);
  CHECK(j["target"] == "moment (8,2) eps=1,1");
  CHECK(j["estimate"] == doctest::Approx(1.002));
  CHECK(j["stderr"] == doctest::Approx(0.003));
  CHECK(j["n_samples"] == 1000);
  CHECK(j["model"]["n"] == 8);
  CHECK(j["model"]["q_n"] == 2);
  CHECK(j["seed"] == 42);

  auto r = nlohmann::json::parse(rational_json(Rational(15, 7)));
  CHECK(r["num"] == 15);
  CHECK(r["den"] == 7);
  CHECK(r["float"] == doctest::Approx(15.0 / 7.0));

  ComparisonRow row = make_row("w", Rational(1, 2));
  auto rows = nlohmann::json::parse(rows_json({row}, 9));
  CHECK(rows["seed"] == 9);
  REQUIRE(rows["rows"].size() == 1);
  CHECK(rows["rows"][0]["label"] == "w");
  CHECK(rows["rows"][0]["mc"].is_null());
  CHECK(rows["rows"][0]["oracle"]["num"] == 1);
}

TEST_CASE("config parsing") {
  ExperimentConfig cfg = parse_experiment_config(kMomentsConfig);
  CHECK(cfg.kind == ExperimentConfig::Kind::moments);
  CHECK(cfg.n == 6);
  CHECK(cfg.q_n == 2);
  CHECK(cfg.eps == std::vector<int>{1, 1, 1, 1});
  CHECK(cfg.est.n_samples == 400);
  CHECK(cfg.est.batches == 4);
  CHECK(cfg.est.seed == 5);

  ExperimentConfig section = parse_experiment_config(
      "[cauchy]\nq = 0.5\nz_steps = 5\n");
  CHECK(section.kind == ExperimentConfig::Kind::cauchy);
  CHECK(section.q_override == 0.5);

  ExperimentConfig conv = parse_experiment_config(
      "kind = converge   # trailing comment\n"
      "models = 8:2, 18:3\n"
      "; full-line comment\n"
      "mc = off\n");
  CHECK(conv.kind == ExperimentConfig::Kind::convergence);
  CHECK(conv.models == std::vector<std::pair<int, int>>{{8, 2}, {18, 3}});
  CHECK(!conv.mc_enabled);
}

TEST_CASE("config diagnostics") {
  CHECK_THROWS_AS(parse_experiment_config("n = 8\n"), ConfigError);

  try {
    parse_experiment_config("kind = moments\nn = 8\nn = 10\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }

  try {
    parse_experiment_config("kind = moments\nbogus = 1\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown key 'bogus'") != std::string::npos);
  }

  try {
    parse_experiment_config("kind = moments\nn = seven\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("expected integer") != std::string::npos);
  }

  // validation collects every problem
  try {
    parse_experiment_config("kind = moments\nn = 7\nbatches = 1\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("n must be even") != std::string::npos);
    CHECK(msg.find("batches must be >= 2") != std::string::npos);
    CHECK(msg.find("eps word required") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_experiment_config("kind = moments\nn = 8\nq_n = 5\neps = 1,1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("kind = fock\ncolors = 9\n"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("kind = cauchy\nz_imag = 0\n"), ConfigError);
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/sykq.ini"), ConfigError);
}

TEST_CASE("experiment artifacts") {
  fs::path dir = fresh_dir("sykq_test_artifacts");
  ExperimentConfig cfg = parse_experiment_config(kMomentsConfig);
  cfg.out_dir = (dir / "a").string();

  std::ostringstream log;
  auto arts = run_experiment(cfg, log);
  CHECK(!arts.rows.empty());
  REQUIRE(!arts.files.empty());
  CHECK(log.str().find("label") != std::string::npos);

  fs::path csv = dir / "a" / "moments.csv";
  REQUIRE(fs::exists(csv));
  ParsedCsv parsed = parse_csv_string(slurp(csv));
  REQUIRE(parsed.seed.has_value());
  CHECK(*parsed.seed == 5);
  CHECK(parsed.rows == arts.rows);

  // bitwise deterministic rerun
  cfg.out_dir = (dir / "b").string();
  std::ostringstream log2;
  run_experiment(cfg, log2);
  CHECK(slurp(dir / "b" / "moments.csv") == slurp(csv));
  CHECK(log2.str() == log.str());

  // json format variant
  cfg.out_dir = (dir / "c").string();
  cfg.format = ExperimentConfig::Format::json;
  run_experiment(cfg, std::cout);
  auto j = nlohmann::json::parse(slurp(dir / "c" / "moments.json"));
  CHECK(j["seed"] == 5);
  CHECK(j["rows"].size() == parsed.rows.size());

  // fock runs without any monte carlo block
  ExperimentConfig fock = parse_experiment_config(
      "kind = fock\ncolors = 2\nk_max = 4\nq = 0.5\n");
  fock.out_dir = (dir / "fock").string();
  std::ostringstream flog;
  auto farts = run_experiment(fock, flog);
  CHECK(farts.rows.size() == 4);
  for (const auto& row : farts.rows) CHECK(!row.mc.has_value());

  // cauchy writes its own grid schema
  ExperimentConfig cauchy = parse_experiment_config(
      "kind = cauchy\nq = 0\nz_steps = 5\ndepth = 200\n");
  cauchy.out_dir = (dir / "cauchy").string();
  std::ostringstream clog;
  auto carts = run_experiment(cauchy, clog);
  CHECK(carts.rows.empty());
  std::string grid = slurp(dir / "cauchy" / "cauchy.csv");
  CHECK(grid.find("re_z,im_z,re_g,im_g") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("command line binary") {
  fs::path dir = fresh_dir("sykq_test_cli");
  spit(dir / "moments.ini", kMomentsConfig);

  auto help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK(help.output.find("moments") != std::string::npos);
  CHECK(help.output.find("selftest") != std::string::npos);

  auto run = run_cli("moments --config " + (dir / "moments.ini").string() + " --out " +
                     (dir / "out").string());
  CHECK(run.status == 0);
  CHECK(run.output.find("wrote") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "moments.csv"));

  auto reseeded = run_cli("moments --config " + (dir / "moments.ini").string() + " --out " +
                          (dir / "out99").string() + " --seed 99");
  CHECK(reseeded.status == 0);
  CHECK(slurp(dir / "out99" / "moments.csv").find("# seed=99") == 0);

  auto mismatch = run_cli("fluct --config " + (dir / "moments.ini").string());
  CHECK(mismatch.status == 2);

  auto missing = run_cli("moments --config " + (dir / "nope.ini").string());
  CHECK(missing.status == 1);
  CHECK(missing.output.find("error") != std::string::npos);

  spit(dir / "broken.ini", "kind = moments\nn = 7\n");
  auto broken = run_cli("moments --config " + (dir / "broken.ini").string());
  CHECK(broken.status == 1);
  CHECK(broken.output.find("invalid config") != std::string::npos);

  auto parts = run_cli("partitions --k 4");
  CHECK(parts.status == 0);
  CHECK(parts.output.find("{1,2}{3,4}") != std::string::npos);
  CHECK(parts.output.find("{1,3}{2,4}") != std::string::npos);
  CHECK(parts.output.find("{1,4}{2,3}") != std::string::npos);

  auto majorana = run_cli("string --n 8 --indices 1 3");
  CHECK(majorana.status == 0);
  CHECK(majorana.output.find("i^") != std::string::npos);

  auto badflag = run_cli("moments --nonsense");
  CHECK(badflag.status != 0);
  fs::remove_all(dir);
}
