#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "sykq/experiments.hpp"
#include "sykq/partitions.hpp"
#include "sykq/pauli.hpp"
#include "sykq/qfock.hpp"
#include "sykq/qmoments.hpp"
#include "sykq/rational.hpp"
#include "sykq/sykmc.hpp"

namespace py = pybind11;
using namespace sykq;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(r.num, r.den);
}

int count_integers(const std::string& text) {
  int count = 0;
  for (size_t i = 0; i < text.size(); ++i)
    if (std::isdigit(static_cast<unsigned char>(text[i])) &&
        (i == 0 || !std::isdigit(static_cast<unsigned char>(text[i - 1]))))
      ++count;
  return count;
}

PairPartition pairing_from_text(const std::string& text) {
  SetPartition sp = SetPartition::from_string(count_integers(text), text);
  return PairPartition::from_set_partition(sp);
}

CouplingLaw law_from_name(const std::string& name) {
  if (name == "gaussian") return CouplingLaw::gaussian;
  if (name == "rademacher") return CouplingLaw::rademacher;
  throw std::invalid_argument("law must be 'gaussian' or 'rademacher'");
}

EstimatorConfig estimator(long long n_samples, int batches, std::uint64_t seed,
                          const std::string& law, const std::string& mode, int probes,
                          int threads) {
  EstimatorConfig ec;
  ec.n_samples = n_samples;
  ec.batches = batches;
  ec.seed = seed;
  ec.law = law_from_name(law);
  if (mode == "dense") ec.mode = EstimatorConfig::Mode::dense;
  else if (mode == "hutchinson") ec.mode = EstimatorConfig::Mode::hutchinson;
  else throw std::invalid_argument("mode must be 'dense' or 'hutchinson'");
  ec.probes = probes;
  ec.threads = threads;
  return ec;
}

py::dict estimate_dict(const CumulantEstimate& est) {
  py::dict d;
  d["value"] = est.value;
  d["std_error"] = est.std_error;
  d["n_samples"] = est.n_samples;
  d["target"] = est.target;
  return d;
}

std::vector<MultiIndex> to_multi_indices(int n, const std::vector<std::vector<int>>& words) {
  std::vector<MultiIndex> out;
  out.reserve(words.size());
  for (const auto& w : words) out.emplace_back(n, w);
  return out;
}

}  // namespace

PYBIND11_MODULE(_sykq, m) {
  m.doc() = "sparse random-coupling model: exact trace oracles, pairing combinatorics, "
            "Monte Carlo estimators, and q-deformed limit laws";

  // ---- combinatorics
  m.def("pair_partitions", [](int k) {
    std::vector<std::string> out;
    for_each_pair_partition(k, [&](const PairPartition& p) { out.push_back(p.str()); });
    return out;
  }, py::arg("k"), "All perfect matchings of {1..k} in canonical text form.");

  m.def("set_partitions", [](int k) {
    std::vector<std::string> out;
    for_each_set_partition(k, [&](const SetPartition& p) { out.push_back(p.str()); });
    return out;
  }, py::arg("k"), "All set partitions of {1..k} in canonical text form.");

  m.def("crossings", [](const std::string& pairing) {
    return crossings(pairing_from_text(pairing));
  }, py::arg("pairing"), "Crossing number of a pairing like '{1,3}{2,4}'.");

  m.def("index_count", [](int n, int q_n) { return FiniteModel(n, q_n).index_count(); },
        py::arg("n"), py::arg("q_n"), "Number of interaction index tuples, C(n, q_n).");

  // ---- string algebra
  m.def("majorana_string", [](int n, const std::vector<int>& indices) {
    MajoranaRep rep(n);
    return to_string(psi_R(MultiIndex(n, indices), rep));
  }, py::arg("n"), py::arg("indices"), "Pauli-string form of one interaction term.");

  m.def("commutation_sign", [](int n, const std::vector<int>& Q, const std::vector<int>& R) {
    return commutation_sign(MultiIndex(n, Q), MultiIndex(n, R));
  }, py::arg("n"), py::arg("Q"), py::arg("R"),
     "Sign in Psi_Q Psi_R = sign * Psi_R Psi_Q for distinct tuples.");

  m.def("trace_word", [](int n, const std::vector<std::vector<int>>& word) {
    MajoranaRep rep(n);
    return trace_word(to_multi_indices(n, word), rep);
  }, py::arg("n"), py::arg("word"),
     "Exact normalized trace of a product of interaction terms.");

  // ---- q limit laws
  m.def("q_from_model", [](int n, int q_n) {
    QParameter p = q_from_model(FiniteModel(n, q_n));
    return py::make_tuple(p.lambda, p.q);
  }, py::arg("n"), py::arg("q_n"),
     "(lambda_n, q) with lambda_n = q_n^2/n and q = (+-)exp(-2 lambda_n).");

  m.def("q_wick_moment", &q_wick_moment, py::arg("eps"), py::arg("q"),
        "Sum over pairings below the color kernel of q^crossings.");

  m.def("q_brownian_moment", &q_brownian_moment, py::arg("times"), py::arg("q"),
        "Pairing sum with q^crossings weighted by min(t_i, t_j) covariances.");

  m.def("fluctuation_limit", [](const std::vector<int>& sizes, const std::vector<int>& eps,
                                double q) {
    return fluctuation_limit(FluctuationSpec(sizes, eps), q);
  }, py::arg("sizes"), py::arg("eps"), py::arg("q"),
     "Limit of the scaled joint cumulant of trace powers.");

  // ---- exact finite-size oracles
  m.def("s_pi", [](const std::string& pairing, int n, int q_n, std::uint64_t max_evals,
                   int threads) {
    return to_fraction(s_pi(pairing_from_text(pairing), FiniteModel(n, q_n),
                            EvalBudget{max_evals, threads}));
  }, py::arg("pairing"), py::arg("n"), py::arg("q_n"),
     py::arg("max_evals") = std::uint64_t{1'000'000'000}, py::arg("threads") = 1,
     "Normalized trace sum of one pairing as an exact Fraction.");

  m.def("pairwise_sign_expectation", [](int n, int q_n) {
    return to_fraction(pairwise_sign_expectation(FiniteModel(n, q_n)));
  }, py::arg("n"), py::arg("q_n"),
     "E[(-1)^|Q cap R|] over uniform index tuples, exact Fraction.");

  m.def("exact_moment", [](const std::vector<int>& eps, int n, int q_n,
                           std::uint64_t max_evals, int threads) {
    return to_fraction(exact_finite_n_moment(eps, FiniteModel(n, q_n),
                                             EvalBudget{max_evals, threads}));
  }, py::arg("eps"), py::arg("n"), py::arg("q_n"),
     py::arg("max_evals") = std::uint64_t{1'000'000'000}, py::arg("threads") = 1,
     "Exact E[tr(H_eps1 ... H_epsk)] for Gaussian couplings as a Fraction.");

  m.def("exact_fluctuation", [](const std::vector<int>& sizes, const std::vector<int>& eps,
                                int n, int q_n, std::uint64_t max_evals, int threads) {
    return to_fraction(exact_finite_n_fluctuation(FluctuationSpec(sizes, eps),
                                                  FiniteModel(n, q_n),
                                                  EvalBudget{max_evals, threads}));
  }, py::arg("sizes"), py::arg("eps"), py::arg("n"), py::arg("q_n"),
     py::arg("max_evals") = std::uint64_t{1'000'000'000}, py::arg("threads") = 1,
     "Exact scaled joint cumulant of trace powers as a Fraction.");

  m.def("exact_process_moment", [](const std::vector<double>& times, int n, int q_n,
                                   std::uint64_t max_evals, int threads) {
    return exact_process_moment(times, FiniteModel(n, q_n), EvalBudget{max_evals, threads});
  }, py::arg("times"), py::arg("n"), py::arg("q_n"),
     py::arg("max_evals") = std::uint64_t{1'000'000'000}, py::arg("threads") = 1,
     "Exact E[tr(H(t_1) ... H(t_k))] under Brownian couplings.");

  // ---- Monte Carlo estimators
  m.def("mc_moment", [](const std::vector<int>& eps, int n, int q_n, long long n_samples,
                        int batches, std::uint64_t seed, const std::string& law,
                        const std::string& mode, int probes, int threads) {
    return estimate_dict(mc_moment(eps, FiniteModel(n, q_n),
                                   estimator(n_samples, batches, seed, law, mode, probes,
                                             threads)));
  }, py::arg("eps"), py::arg("n"), py::arg("q_n"), py::arg("n_samples") = 10000,
     py::arg("batches") = 20, py::arg("seed") = kDefaultSeed, py::arg("law") = "gaussian",
     py::arg("mode") = "dense", py::arg("probes") = 64, py::arg("threads") = 1,
     "Sample mean of a mixed trace moment with jackknife standard error.");

  m.def("mc_fluctuation", [](const std::vector<int>& sizes, const std::vector<int>& eps, int n,
                             int q_n, long long n_samples, int batches, std::uint64_t seed,
                             int threads) {
    return estimate_dict(mc_fluctuation(FluctuationSpec(sizes, eps), FiniteModel(n, q_n),
                                        estimator(n_samples, batches, seed, "gaussian",
                                                  "dense", 64, threads)));
  }, py::arg("sizes"), py::arg("eps"), py::arg("n"), py::arg("q_n"),
     py::arg("n_samples") = 10000, py::arg("batches") = 20, py::arg("seed") = kDefaultSeed,
     py::arg("threads") = 1,
     "Scaled joint k-statistic of trace powers over Gaussian samples.");

  m.def("mc_process_moment", [](const std::vector<double>& times, int n, int q_n,
                                long long n_samples, int batches, std::uint64_t seed,
                                int threads) {
    return estimate_dict(mc_process_moment(times, FiniteModel(n, q_n),
                                           estimator(n_samples, batches, seed, "gaussian",
                                                     "dense", 64, threads)));
  }, py::arg("times"), py::arg("n"), py::arg("q_n"), py::arg("n_samples") = 10000,
     py::arg("batches") = 20, py::arg("seed") = kDefaultSeed, py::arg("threads") = 1,
     "Sample mean of a time-indexed moment under Brownian couplings.");

  // ---- deformed Fock space and transform
  m.def("vacuum_moment", [](const std::vector<int>& eps, double q, int degree_cap) {
    return vacuum_moment(eps, q, degree_cap);
  }, py::arg("eps"), py::arg("q"), py::arg("degree_cap") = -1,
     "Vacuum expectation of a field-operator word on the truncated Fock space.");

  m.def("q_inner", [](const std::vector<int>& u, const std::vector<int>& v, double q) {
    return q_inner(FockWord(u), FockWord(v), q);
  }, py::arg("u"), py::arg("v"), py::arg("q"),
     "Deformed inner product of two tensor words.");

  m.def("cauchy_transform", &cauchy_continued_fraction, py::arg("z"), py::arg("q"),
        py::arg("depth") = 500,
        "Continued-fraction Cauchy transform of the one-color limit law.");

  m.def("cauchy_series_moments", &cauchy_series_moments, py::arg("q"), py::arg("k_max"),
        py::arg("depth") = 200,
        "Moments m_0..m_k of the limit law read off the transform's series.");

  m.def("semicircle_cauchy", &semicircle_cauchy, py::arg("z"),
        "Closed-form transform of the semicircle law (the q = 0 case).");

  // ---- self check
  m.def("selftest", []() {
    std::ostringstream sink;
    return run_selftest(sink);
  }, "Run the exact-property suite; returns the number of failures.");
}
