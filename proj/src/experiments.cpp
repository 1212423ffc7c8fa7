#include "sykq/experiments.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sykq/qfock.hpp"
#include "sykq/rng.hpp"
#include "sykq/sykmc.hpp"

namespace sykq {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_times(const std::vector<double>& v) {
  std::string out;
  char buf[32];
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%g", v[i]);
    out += buf;
  }
  return out;
}

std::string model_label(const FiniteModel& m) {
  return "(" + std::to_string(m.n) + "," + std::to_string(m.q_n) + ")";
}

std::string gshort(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string write_file(const ExperimentConfig& cfg, const std::string& name,
                       const std::string& content) {
  fs::create_directories(cfg.out_dir);
  fs::path p = fs::path(cfg.out_dir) / name;
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + p.string());
  return p.string();
}

void emit_rows(const ExperimentConfig& cfg, const std::vector<ComparisonRow>& rows,
               std::ostream& log, ExperimentArtifacts& art) {
  log << render_table(rows);
  std::string name = std::string(kind_name(cfg.kind)) +
                     (cfg.format == ExperimentConfig::Format::csv ? ".csv" : ".json");
  std::string content = cfg.format == ExperimentConfig::Format::csv
                            ? csv_string(rows, cfg.est.seed)
                            : rows_json(rows, cfg.est.seed);
  art.files.push_back(write_file(cfg, name, content));
  art.rows = rows;
}

void emit_estimate(const ExperimentConfig& cfg, const CumulantEstimate& est,
                   const FiniteModel& model, ExperimentArtifacts& art) {
  std::string name = std::string(kind_name(cfg.kind)) + "_estimate.json";
  art.files.push_back(write_file(
      cfg, name,
      estimate_json(est.target, est.value, est.std_error, est.n_samples, model, cfg.est.seed)));
}

PairPartition parse_pairing(const std::string& text) {
  int count = 0;
  for (size_t i = 0; i < text.size(); ++i)
    if (std::isdigit(static_cast<unsigned char>(text[i])) &&
        (i == 0 || !std::isdigit(static_cast<unsigned char>(text[i - 1]))))
      ++count;
  SetPartition sp = SetPartition::from_string(count, text);
  return PairPartition::from_set_partition(sp);
}

ExperimentArtifacts run_moments(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  FiniteModel m = cfg.model();
  std::string label = "moment " + model_label(m) + " eps=" + join_ints(cfg.eps);
  ComparisonRow row = make_row(label, exact_finite_n_moment(cfg.eps, m, cfg.eval_budget()));
  row.asymptotic = q_wick_moment(cfg.eps, q_from_model(m).q);
  if (cfg.mc_enabled) {
    CumulantEstimate est = mc_moment(cfg.eps, m, cfg.est);
    row.mc = est.value;
    row.mc_stderr = est.std_error;
    emit_estimate(cfg, est, m, art);
  }
  emit_rows(cfg, {row}, log, art);
  return art;
}

ExperimentArtifacts run_fluctuations(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  FiniteModel m = cfg.model();
  std::vector<int> eps = cfg.eps;
  if (eps.empty()) {
    int total = 0;
    for (int s : cfg.sizes) total += s;
    eps.assign(total, 1);
  }
  FluctuationSpec spec(cfg.sizes, eps);
  std::string label = "fluctuation " + model_label(m) + " sizes=" + join_ints(cfg.sizes) +
                      " eps=" + join_ints(eps);
  ComparisonRow row = make_row(label, exact_finite_n_fluctuation(spec, m, cfg.eval_budget()));
  row.asymptotic = fluctuation_limit(spec, q_from_model(m).q);
  if (cfg.mc_enabled) {
    CumulantEstimate est = mc_fluctuation(spec, m, cfg.est);
    row.mc = est.value;
    row.mc_stderr = est.std_error;
    emit_estimate(cfg, est, m, art);
  }
  emit_rows(cfg, {row}, log, art);
  return art;
}

ExperimentArtifacts run_process(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  FiniteModel m = cfg.model();
  std::string label = "process " + model_label(m) + " times=" + join_times(cfg.times);
  ComparisonRow row = make_row(label, exact_process_moment(cfg.times, m, cfg.eval_budget()));
  row.asymptotic = q_brownian_moment(cfg.times, q_from_model(m).q);
  if (cfg.mc_enabled) {
    CumulantEstimate est = mc_process_moment(cfg.times, m, cfg.est);
    row.mc = est.value;
    row.mc_stderr = est.std_error;
    emit_estimate(cfg, est, m, art);
  }
  emit_rows(cfg, {row}, log, art);
  return art;
}

ExperimentArtifacts run_fock(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  double q = cfg.q_override.value_or(0.5);
  int p = cfg.colors;
  FockOperators ops = build_operators(p, q, (cfg.k_max + 1) / 2);
  std::vector<ComparisonRow> rows;
  for (int k = 1; k <= cfg.k_max; ++k) {
    double max_dev = 0.0;
    std::vector<int> word(k, 1), worst;
    // depth-first over suffixes: state = s(word[t+1]) ... s(word[k]) vacuum
    std::function<void(int, const Eigen::VectorXd&)> rec = [&](int t, const Eigen::VectorXd& v) {
      if (t == 0) {
        double dev = std::abs(v[0] - q_wick_moment(word, q));
        if (dev > max_dev) {
          max_dev = dev;
          worst = word;
        }
        return;
      }
      for (int c = 1; c <= p; ++c) {
        word[t - 1] = c;
        rec(t - 1, ops.field(c) * v);
      }
    };
    Eigen::VectorXd vac = Eigen::VectorXd::Zero(ops.dim);
    vac[0] = 1.0;
    rec(k, vac);
    ComparisonRow row = make_row(
        "fock max|vacuum-wick| k=" + std::to_string(k) + " p=" + std::to_string(p) +
            " q=" + gshort(q),
        max_dev);
    rows.push_back(row);
    if (!worst.empty() && max_dev > 0)
      log << "  worst word at k=" << k << ": " << join_ints(worst) << "\n";
  }
  emit_rows(cfg, rows, log, art);
  return art;
}

ExperimentArtifacts run_cauchy(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  double q = cfg.q_override.value_or(0.0);
  std::vector<std::complex<double>> zs, gs;
  for (int j = 0; j < cfg.z_steps; ++j) {
    double x = cfg.z_steps == 1
                   ? cfg.z_real_min
                   : cfg.z_real_min + (cfg.z_real_max - cfg.z_real_min) * j / (cfg.z_steps - 1);
    std::complex<double> z(x, cfg.z_imag);
    zs.push_back(z);
    gs.push_back(cauchy_continued_fraction(z, q, cfg.depth));
  }
  if (cfg.format == ExperimentConfig::Format::csv) {
    std::ostringstream os;
    os << "# seed=" << cfg.est.seed << "\n";
    os << "re_z,im_z,re_g,im_g\n";
    for (size_t j = 0; j < zs.size(); ++j)
      os << format_double(zs[j].real()) << ',' << format_double(zs[j].imag()) << ','
         << format_double(gs[j].real()) << ',' << format_double(gs[j].imag()) << "\n";
    art.files.push_back(write_file(cfg, "cauchy.csv", os.str()));
  } else {
    ordered_json top;
    top["seed"] = cfg.est.seed;
    top["q"] = q;
    top["depth"] = cfg.depth;
    ordered_json grid = ordered_json::array();
    for (size_t j = 0; j < zs.size(); ++j)
      grid.push_back({{"re_z", zs[j].real()},
                      {"im_z", zs[j].imag()},
                      {"re_g", gs[j].real()},
                      {"im_g", gs[j].imag()}});
    top["grid"] = std::move(grid);
    art.files.push_back(write_file(cfg, "cauchy.json", top.dump(2)));
  }
  log << "cauchy transform: " << zs.size() << " grid points, q=" << gshort(q)
      << ", depth=" << cfg.depth << "\n";
  return art;
}

ExperimentArtifacts run_convergence(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentArtifacts art;
  PairPartition pp = parse_pairing(cfg.pi);
  int cr = crossings(pp);
  int blocks = static_cast<int>(pp.pairs().size());
  std::vector<ComparisonRow> rows;
  for (const auto& [mn, mq] : cfg.models) {
    FiniteModel m(mn, mq);
    EvalBudget eb = cfg.eval_budget();
    if (!cfg.budget) {
      unsigned __int128 need = 1;
      for (int b = 0; b < blocks; ++b) {
        need *= m.index_count();
        if (need > ~std::uint64_t{0}) throw BudgetExceeded(~std::uint64_t{0}, eb.max_trace_evals);
      }
      eb.max_trace_evals = std::max<std::uint64_t>(eb.max_trace_evals,
                                                   static_cast<std::uint64_t>(need));
    }
    QParameter qp = q_from_model(m);
    ComparisonRow row = make_row("s_pi " + pp.str() + " " + model_label(m), s_pi(pp, m, eb));
    row.asymptotic = qpow(qp.q, cr);
    rows.push_back(row);
  }
  for (const auto& [mn, mq] : cfg.models) {
    FiniteModel m(mn, mq);
    QParameter qp = q_from_model(m);
    ComparisonRow row =
        make_row("pairwise sign " + model_label(m), pairwise_sign_expectation(m));
    row.asymptotic = std::exp(-2.0 * qp.lambda);
    rows.push_back(row);
  }
  emit_rows(cfg, rows, log, art);
  return art;
}

}  // namespace

ExperimentArtifacts run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentConfig::Kind::moments: return run_moments(cfg, log);
    case ExperimentConfig::Kind::fluctuations: return run_fluctuations(cfg, log);
    case ExperimentConfig::Kind::process: return run_process(cfg, log);
    case ExperimentConfig::Kind::fock: return run_fock(cfg, log);
    case ExperimentConfig::Kind::cauchy: return run_cauchy(cfg, log);
    case ExperimentConfig::Kind::convergence: return run_convergence(cfg, log);
  }
  throw std::logic_error("unreachable experiment kind");
}

namespace {

std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c, std::uint64_t bound) {
  return rng::block_at(seed, a, b, c)[0] % bound;  // slight bias is fine for self-checks
}

MultiIndex random_multi_index(const FiniteModel& m, std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t r = uniform_below(seed, tag, 0, 0, m.index_count());
  return MultiIndex::from_rank(m.n, m.q_n, r);
}

}  // namespace

int run_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](bool ok, const std::string& name) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    const long long want[] = {1, 3, 15, 105, 945};
    bool ok = true;
    for (int j = 1; j <= 5; ++j)
      ok = ok && static_cast<long long>(enumerate_pair_partitions(2 * j).size()) == want[j - 1];
    check(ok, "pairing counts (2j-1)!! for k <= 10");
  }
  {
    int hist[4] = {0, 0, 0, 0};
    for (const auto& pp : enumerate_pair_partitions(6)) {
      int c = crossings(pp);
      if (c < 4) ++hist[c];
    }
    check(hist[0] == 5 && hist[1] == 6 && hist[2] == 3 && hist[3] == 1,
          "crossing histogram of P_2(6) is (5,6,3,1)");
  }
  {
    bool ok = true;
    std::uint64_t tag = 0;
    for (int n = 2; n <= 12 && ok; n += 2) {
      MajoranaRep rep(n);
      for (int rep_i = 0; rep_i < 34 && ok; ++rep_i) {
        int qn = 1 + static_cast<int>(uniform_below(7, tag, 1, 0, n / 2));
        FiniteModel m(n, qn);
        MultiIndex Q = random_multi_index(m, 7, tag * 8 + 2);
        MultiIndex R = random_multi_index(m, 7, tag * 8 + 3);
        for (std::uint64_t retry = 4; R == Q; ++retry)
          R = random_multi_index(m, 7, tag * 8 + retry);
        ++tag;
        PauliString pq = psi_R(Q, rep), pr = psi_R(R, rep);
        PauliString sq = multiply(pq, pq);
        ok = ok && sq.x_mask == 0 && sq.z_mask == 0 && sq.phase % 4 == 0;
        PauliString ab = multiply(pq, pr), ba = multiply(pr, pq);
        int sign = commutation_sign(Q, R);
        ok = ok && ab.x_mask == ba.x_mask && ab.z_mask == ba.z_mask &&
             (ab.phase % 4) == ((ba.phase + (sign == 1 ? 0 : 2)) % 4);
      }
    }
    check(ok, "string involution and commutation sign, n <= 12, random index pairs");
  }
  {
    bool ok = true;
    for (int n = 4; n <= 8 && ok; n += 2) {
      for (int qn = 1; qn <= n / 2 && ok; ++qn) {
        FiniteModel m(n, qn);
        MajoranaRep rep(n);
        for (int t = 0; t < 6 && ok; ++t) {
          std::vector<MultiIndex> word;
          for (int j = 0; j < 4; ++j)
            word.push_back(random_multi_index(m, 11, 97 * n + 13 * qn + 4 * t + j));
          PauliString prod = psi_R(word[0], rep);
          for (size_t j = 1; j < word.size(); ++j) prod = multiply(prod, psi_R(word[j], rep));
          Eigen::MatrixXcd dm = dense_matrix(psi_R(word[0], rep));
          for (size_t j = 1; j < word.size(); ++j)
            dm = dm * dense_matrix(psi_R(word[j], rep));
          std::complex<double> dense_tr = dm.trace() / static_cast<double>(dm.rows());
          double want_re = 0.0;
          bool threw = false;
          try {
            want_re = static_cast<double>(trace_word(word, rep));
          } catch (const std::domain_error&) {
            threw = true;  // imaginary unit trace; compare against the dense value
            ok = ok && std::abs(dense_tr.real()) < 1e-12 && std::abs(dense_tr.imag()) > 0.0;
          }
          if (!threw)
            ok = ok && std::abs(dense_tr.real() - want_re) < 1e-12 &&
                 std::abs(dense_tr.imag()) < 1e-12;
        }
      }
    }
    check(ok, "trace of 4-letter words matches dense matrix trace, n <= 8");
  }
  {
    bool ok = true;
    FiniteModel m(8, 2);
    for (int k = 2; k <= 6; k += 2) {
      std::vector<int> eps(k, 1);
      Rational route_a = exact_finite_n_moment(eps, m);
      Rational route_b(0, 1);
      for (const auto& pp : enumerate_pair_partitions(k)) route_b = route_b + s_pi(pp, m);
      ok = ok && route_a == route_b;
    }
    Rational m4 = exact_finite_n_moment(std::vector<int>(4, 1), m);
    ok = ok && m4 == Rational(15, 7);
    check(ok, "moment triangle at (8,2): kernel expansion equals pairing sum; k=4 value 15/7");
  }
  {
    bool ok = true;
    const long long catalan[] = {1, 1, 2, 5, 14, 42};
    for (int k = 2; k <= 10; k += 2) {
      std::vector<int> eps(k, 1);
      double df = 1.0;
      for (int j = k - 1; j > 1; j -= 2) df *= j;
      ok = ok && std::abs(q_wick_moment(eps, 1.0) - df) < 1e-9;
      ok = ok && std::abs(q_wick_moment(eps, -1.0) - 1.0) < 1e-9;
      ok = ok && std::abs(q_wick_moment(eps, 0.0) - catalan[k / 2]) < 1e-9;
    }
    check(ok, "pairing-sum endpoints: q=1 double factorial, q=-1 unit, q=0 Catalan");
  }
  {
    FiniteModel m(8, 2);
    PairPartition pp(4, {{0, 2}, {1, 3}});
    Rational full = s_pi(pp, m);
    MultiIndex r = MultiIndex::from_rank(8, 2, 0);
    bool ok = full == Rational(1, 7) && s_pi_restricted(pp, 0, r, m) == full;
    check(ok, "restricted pairing sum pins a block without changing the value");
  }
  {
    bool ok = true;
    FockWord h({1}), hh({1, 1}), hg({1, 2}), gh({2, 1});
    ok = ok && q_inner(h, h, 0.7) == 1.0;
    ok = ok && std::abs(q_inner(hh, hh, 0.7) - 1.7) < 1e-15;
    ok = ok && std::abs(q_inner(hg, gh, 0.7) - 0.7) < 1e-15;
    for (int k = 1; k <= 6 && ok; ++k) {
      std::vector<int> word(k);
      for (int mask = 0; mask < (1 << k); ++mask) {
        for (int i = 0; i < k; ++i) word[i] = 1 + (mask >> i & 1);
        if (std::abs(vacuum_moment(word, 0.5) - q_wick_moment(word, 0.5)) > 1e-10) ok = false;
      }
    }
    check(ok, "Fock vacuum moments equal the pairing sums, two colors, k <= 6");
  }
  {
    std::complex<double> g = cauchy_continued_fraction({3.0, 0.0}, 0.0, 500);
    bool ok = std::abs(g - std::complex<double>((3.0 - std::sqrt(5.0)) / 2.0, 0.0)) < 1e-9;
    std::complex<double> zi(0.4, 0.8);
    ok = ok && std::abs(cauchy_continued_fraction(zi, 0.0, 500) - semicircle_cauchy(zi)) < 1e-9;
    ok = ok && cauchy_continued_fraction(zi, 0.3, 500).imag() < 0.0;
    check(ok, "continued fraction matches the semicircle transform at q=0");
  }
  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) + " check(s) FAILED\n");
  return failures;
}

}  // namespace sykq
