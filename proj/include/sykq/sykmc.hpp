#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sykq/qmoments.hpp"
#include "sykq/stats.hpp"

namespace sykq {

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class CouplingLaw { gaussian, rademacher };

// One realization of the coupling vector, addressable by (seed, sample_index,
// stream): the same key always regenerates the same couplings.
struct SykSample {
  FiniteModel model;
  CouplingLaw law = CouplingLaw::gaussian;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t sample_index = 0;
  std::uint64_t stream = 0;
  std::vector<double> couplings;  // indexed by lexicographic MultiIndex rank
};

SykSample sample(const FiniteModel& model, CouplingLaw law, std::uint64_t seed,
                 std::uint64_t sample_index = 0, std::uint64_t stream = 0);

// Brownian coupling paths on a fixed grid; values[t][rank] accumulates
// independent Gaussian increments of variance t_j - t_{j-1}.
struct BrownianCouplings {
  FiniteModel model;
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};

BrownianCouplings dynamical_sample(const FiniteModel& model, const std::vector<double>& times,
                                   std::uint64_t seed, std::uint64_t sample_index = 0);

struct EstimatorConfig {
  enum class Mode { dense, hutchinson };
  Mode mode = Mode::dense;
  long long n_samples = 100000;
  int batches = 20;
  std::uint64_t seed = kDefaultSeed;
  CouplingLaw law = CouplingLaw::gaussian;
  int probes = 64;   // hutchinson only
  int threads = 1;   // 0 = hardware concurrency
};

struct CumulantEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  std::string target;
};

// H = |I_n|^{-1/2} sum_R J_R Psi_R as an explicit hermitian matrix
Eigen::MatrixXcd dense_hamiltonian(const FiniteModel& model, const std::vector<double>& couplings);
Eigen::MatrixXcd dense_hamiltonian(const SykSample& s);

// matrix-free H*v via per-term string application
Eigen::VectorXcd apply_hamiltonian(const FiniteModel& model, const std::vector<double>& couplings,
                                   const Eigen::VectorXcd& v);

// normalized trace of H^k for one sample; dense mode is exact, hutchinson is
// an unbiased probe average
double trace_power(const SykSample& s, int k, const EstimatorConfig& config);

struct HutchinsonEstimate {
  double value = 0.0;
  double std_error = 0.0;  // spread over probes
  int probes = 0;
};
HutchinsonEstimate hutchinson_trace_power(const FiniteModel& model,
                                          const std::vector<double>& couplings, int k, int probes,
                                          std::uint64_t seed, std::uint64_t sample_index = 0);

// sample mean of tr(H_{eps(1)} ... H_{eps(k)}) over independent coupling
// vectors per color, with jackknife standard error
CumulantEstimate mc_moment(const std::vector<int>& eps, const FiniteModel& model,
                           const EstimatorConfig& config);

// |I_n|^{m-1} times the joint k-statistic of (tr H_{w_1}, ..., tr H_{w_m});
// Gaussian couplings only (the fluctuation limit assumes centered Gaussian
// coefficients)
CumulantEstimate mc_fluctuation(const FluctuationSpec& spec, const FiniteModel& model,
                                const EstimatorConfig& config);

// sample mean of tr(H(t_1) ... H(t_k)) under Brownian couplings
CumulantEstimate mc_process_moment(const std::vector<double>& times, const FiniteModel& model,
                                   const EstimatorConfig& config);

}  // namespace sykq
