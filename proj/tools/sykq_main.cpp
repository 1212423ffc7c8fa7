#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sykq/config.hpp"
#include "sykq/experiments.hpp"
#include "sykq/pauli.hpp"
#include "sykq/partitions.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::string> format;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config, "experiment config file")->required();
  sub->add_option("--seed", o.seed, "override the config seed");
  sub->add_option("--out", o.out, "override the output directory");
  sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int run_kind(sykq::ExperimentConfig::Kind want, const CommonOpts& o) {
  try {
    sykq::ExperimentConfig cfg = sykq::load_experiment_config(o.config);
    if (cfg.kind != want) {
      std::cerr << "error: config kind '" << sykq::kind_name(cfg.kind)
                << "' does not match this subcommand\n";
      return 2;
    }
    if (o.seed) cfg.est.seed = *o.seed;
    if (o.out) cfg.out_dir = *o.out;
    if (o.threads) cfg.est.threads = *o.threads;
    if (o.format)
      cfg.format = *o.format == "json" ? sykq::ExperimentConfig::Format::json
                                       : sykq::ExperimentConfig::Format::csv;
    cfg.validate();
    auto art = sykq::run_experiment(cfg, std::cout);
    for (const auto& f : art.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse random-coupling model: exact oracles, Monte Carlo, q-deformed limits"};
  app.require_subcommand(1);
  int rc = 0;

  using Kind = sykq::ExperimentConfig::Kind;
  struct SubSpec {
    const char* name;
    const char* help;
    Kind kind;
  };
  const SubSpec subs[] = {
      {"moments", "exact vs Monte Carlo vs limit moments of one model", Kind::moments},
      {"fluct", "scaled joint cumulants of trace powers", Kind::fluctuations},
      {"process", "time-indexed Brownian-coupling moments", Kind::process},
      {"fock", "cross-check vacuum moments against pairing sums", Kind::fock},
      {"cauchy", "continued-fraction Cauchy transform over a z-grid", Kind::cauchy},
      {"converge", "finite-size pairing sums against their q limits", Kind::convergence},
  };
  std::vector<std::unique_ptr<CommonOpts>> opts;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    opts.push_back(std::make_unique<CommonOpts>());
    CommonOpts* o = opts.back().get();
    add_common(sub, *o);
    Kind kind = s.kind;
    sub->callback([&rc, kind, o] { rc = run_kind(kind, *o); });
  }

  auto* selftest = app.add_subcommand("selftest", "run the exact-property suite");
  selftest->callback([&rc] { rc = sykq::run_selftest(std::cout) == 0 ? 0 : 1; });

  auto* parts = app.add_subcommand("partitions", "dump partition enumerations");
  int part_k = 4;
  bool part_all = false;
  parts->add_option("--k", part_k, "ground-set size")->required()->check(CLI::Range(1, 14));
  parts->add_flag("--all", part_all, "all set partitions instead of pairings");
  parts->callback([&rc, &part_k, &part_all] {
    if (part_all) {
      sykq::for_each_set_partition(
          part_k, [](const sykq::SetPartition& p) { std::cout << p.str() << "\n"; });
    } else {
      sykq::for_each_pair_partition(
          part_k, [](const sykq::PairPartition& p) { std::cout << p.str() << "\n"; });
    }
    rc = 0;
  });

  auto* str = app.add_subcommand("string", "print the Pauli string of one interaction term");
  int str_n = 8;
  std::vector<int> str_indices;
  str->add_option("--n", str_n, "number of Majorana modes (even)")->required();
  str->add_option("--indices", str_indices, "strictly increasing labels, e.g. --indices 1 3 4")
      ->required();
  str->callback([&rc, &str_n, &str_indices] {
    try {
      sykq::MajoranaRep rep(str_n);
      sykq::MultiIndex R(str_n, str_indices);
      std::cout << sykq::to_string(sykq::psi_R(R, rep)) << "\n";
      rc = 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 1;
    }
  });

  CLI11_PARSE(app, argc, argv);
  return rc;
}
