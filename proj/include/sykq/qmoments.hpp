#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sykq/partitions.hpp"
#include "sykq/pauli.hpp"
#include "sykq/rational.hpp"

namespace sykq {

// Finite model (n, q_n): n Majoranas, interactions over all q_n-subsets.
struct FiniteModel {
  int n = 2;
  int q_n = 1;

  FiniteModel(int n_, int qn_) : n(n_), q_n(qn_) {
    if (n_ <= 0 || n_ % 2 != 0) throw std::invalid_argument("FiniteModel: n must be even and positive");
    if (qn_ < 1 || qn_ > n_ / 2) throw std::invalid_argument("FiniteModel: need 1 <= q_n <= n/2");
  }
  std::uint64_t index_count() const { return binomial(n, q_n); }
  int sites() const { return n / 2; }
  MajoranaRep rep() const { return MajoranaRep(n); }
  bool operator==(const FiniteModel& o) const { return n == o.n && q_n == o.q_n; }
};

// q = e^{-2 lambda} for even q_n, -e^{-2 lambda} for odd
struct QParameter {
  double lambda = 0.0;
  bool even_parity = true;
  double q = 1.0;
};
QParameter q_from_lambda(double lambda, bool even_parity);
// finite-n proxy with lambda_n = q_n^2 / n
QParameter q_from_model(const FiniteModel& model);

// Brute-force sums refuse to start when they would need more than
// max_trace_evals trace evaluations.  threads chunks the outermost assignment
// loop; partial sums are integers, so the result is independent of the split.
struct EvalBudget {
  std::uint64_t max_trace_evals = 1'000'000'000;
  int threads = 1;
};
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t limit);
  std::uint64_t required, limit;
};

// q^e with the 0^0 := 1 convention
double qpow(double q, int e);

// sum over pairings below Ker eps of q^{crossings}; 0 for odd k; 1 for k = 0
double q_wick_moment(const std::vector<int>& eps, double q);

// sum over all pairings of q^{crossings} * prod min(t_i, t_j)
double q_brownian_moment(const std::vector<double>& times, double q);

struct FluctuationSpec {
  std::vector<int> sizes;  // word lengths (k_1, ..., k_m)
  std::vector<int> eps;    // colors on the concatenated word, length sum(sizes)

  FluctuationSpec(std::vector<int> sizes_, std::vector<int> eps_);
  int order() const { return static_cast<int>(sizes.size()); }
  int total() const;
  IntervalPartition theta() const { return IntervalPartition(sizes); }
  std::vector<std::vector<int>> words() const;  // eps split by sizes
};

// limit of |I_n|^{m-1} c_m(tr H_{w_1}, ..., tr H_{w_m}): double sum over
// pairings (pi, pi') with pi join theta full, pi' inside theta,
// pi <= Ker eps, |pi join pi'| = k/2 - m + 1, weighted q^{cr(pi')}
double fluctuation_limit(const FluctuationSpec& spec, double q);

// closed form of the trace of a word constant on the blocks of a pairing:
// (-1)^{q_n cr(pi) + sum over crossing block pairs of |value(V) cap value(W)|}
int pairing_trace_sign(const PairPartition& pi, const std::vector<MultiIndex>& block_values,
                       int q_n);

// S(pi, n) = |I_n|^{-k/2} sum over words constant on the blocks of pi of the
// word trace, evaluated by string algebra block assignment by block assignment
Rational s_pi(const PairPartition& pi, const FiniteModel& model, const EvalBudget& budget = {});

// same sum with block V pinned to the value R, normalized |I_n|^{-(k-2)/2};
// equals s_pi for every choice of (V, R)
Rational s_pi_restricted(const PairPartition& pi, int block_index, const MultiIndex& R,
                         const FiniteModel& model, const EvalBudget& budget = {});

// E[prod_j tr(prod_{i in word j} H_{color})] exactly, for centered Gaussian
// couplings with unit variance: Isserlis expansion grouped by the kernel of
// the index assignment
Rational exact_mixed_trace_moment(const FiniteModel& model,
                                  const std::vector<std::vector<int>>& words,
                                  const EvalBudget& budget = {});

// exact E[tr(H_{eps(1)} ... H_{eps(k)})] for Gaussian couplings
Rational exact_finite_n_moment(const std::vector<int>& eps, const FiniteModel& model,
                               const EvalBudget& budget = {});

// exact |I_n|^{m-1} c_m(tr H_{w_1}, ..., tr H_{w_m}) for Gaussian couplings
Rational exact_finite_n_fluctuation(const FluctuationSpec& spec, const FiniteModel& model,
                                    const EvalBudget& budget = {});

// exact E[tr(H(t_1) ... H(t_k))] for Brownian couplings: pairing sum with
// min-covariances against S(pi, n)
double exact_process_moment(const std::vector<double>& times, const FiniteModel& model,
                            const EvalBudget& budget = {});

// m-th joint cumulant via Moebius inversion over P(m); subset_moment receives
// ascending 0-based positions and returns E of the product over that subset
double classical_cumulant(int m, const std::function<double(const std::vector<int>&)>& subset_moment);

// E[(-1)^{|Q cap R|}] over independent uniform Q, R in I_n;
// hypergeometric closed form, converges to e^{-2 lambda}
Rational pairwise_sign_expectation(const FiniteModel& model);

}  // namespace sykq
