#include "sykq/stats.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sykq/partitions.hpp"

namespace sykq {

namespace {

// one additive term coeff * prod_S T_S / (N)_r of the k-statistic
struct KTerm {
  double coeff;
  int r;
  std::vector<std::uint32_t> masks;
};

// Expand c_m = sum_sigma mu(sigma,1) h_sigma with
// h_sigma = (N)_r^{-1} sum_{rho in P(r)} prod_{C in rho}
//           (-1)^{|C|-1}(|C|-1)! T_{union of blocks in C}.
std::vector<KTerm> build_terms(int m) {
  std::vector<KTerm> terms;
  for_each_set_partition(m, [&](const SetPartition& sigma) {
    double mob = static_cast<double>(mobius_to_top(sigma));
    int r = sigma.block_count();
    std::vector<std::uint32_t> block_masks(r, 0);
    for (int b = 0; b < r; ++b)
      for (int e : sigma.blocks()[b]) block_masks[b] |= std::uint32_t{1} << e;
    for_each_set_partition(r, [&](const SetPartition& rho) {
      KTerm term;
      term.r = r;
      term.coeff = mob;
      for (const auto& cluster : rho.blocks()) {
        term.coeff *= static_cast<double>(mobius_to_top_blocks(static_cast<int>(cluster.size())));
        std::uint32_t mask = 0;
        for (int b : cluster) mask |= block_masks[b];
        term.masks.push_back(mask);
      }
      terms.push_back(std::move(term));
    });
  });
  return terms;
}

double falling(double n, int r) {
  double acc = 1.0;
  for (int i = 0; i < r; ++i) acc *= n - i;
  return acc;
}

double eval_terms(const std::vector<KTerm>& terms, const std::vector<double>& subset_sums,
                  double n) {
  double acc = 0.0;
  for (const auto& t : terms) {
    double prod = t.coeff;
    for (std::uint32_t mask : t.masks) prod *= subset_sums[mask];
    acc += prod / falling(n, t.r);
  }
  return acc;
}

}  // namespace

CumulantResult joint_cumulant_jackknife(const std::vector<std::vector<double>>& series,
                                        int batches) {
  int m = static_cast<int>(series.size());
  if (m < 1) throw std::invalid_argument("joint_cumulant: need at least one series");
  long long n = static_cast<long long>(series[0].size());
  for (const auto& s : series)
    if (static_cast<long long>(s.size()) != n)
      throw std::invalid_argument("joint_cumulant: series length mismatch");
  if (batches < 2) throw std::invalid_argument("joint_cumulant: need at least 2 batches");
  if (n < batches) throw std::invalid_argument("joint_cumulant: fewer samples than batches");

  // cumulants of order >= 2 are translation invariant; centering keeps the
  // subset product sums O(1)-conditioned
  std::vector<double> shift(m, 0.0);
  for (int v = 0; v < m; ++v) {
    double acc = 0.0;
    for (double x : series[v]) acc += x;
    shift[v] = acc / static_cast<double>(n);
  }

  auto terms = build_terms(m);
  std::uint32_t n_masks = std::uint32_t{1} << m;
  std::vector<double> total(n_masks, 0.0);
  std::vector<std::vector<double>> per_batch(batches, std::vector<double>(n_masks, 0.0));
  std::vector<long long> batch_count(batches, 0);

  std::vector<double> x(m);
  for (long long i = 0; i < n; ++i) {
    int b = static_cast<int>(i * batches / n);
    for (int v = 0; v < m; ++v) x[v] = series[v][i] - shift[v];
    for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
      double prod = 1.0;
      for (int v = 0; v < m; ++v)
        if (mask >> v & 1) prod *= x[v];
      total[mask] += prod;
      per_batch[b][mask] += prod;
    }
    ++batch_count[b];
  }
  total[0] = static_cast<double>(n);

  CumulantResult out;
  out.n_samples = n;
  out.value = eval_terms(terms, total, static_cast<double>(n));
  if (m == 1) out.value += shift[0];

  std::vector<double> deleted(n_masks);
  std::vector<double> loo(batches);
  double loo_mean = 0.0;
  for (int b = 0; b < batches; ++b) {
    for (std::uint32_t mask = 0; mask < n_masks; ++mask)
      deleted[mask] = total[mask] - per_batch[b][mask];
    double n_del = static_cast<double>(n - batch_count[b]);
    loo[b] = eval_terms(terms, deleted, n_del);
    loo_mean += loo[b];
  }
  loo_mean /= batches;
  double var = 0.0;
  for (int b = 0; b < batches; ++b) var += (loo[b] - loo_mean) * (loo[b] - loo_mean);
  var *= static_cast<double>(batches - 1) / batches;
  out.std_error = std::sqrt(var);
  return out;
}

double joint_cumulant(const std::vector<std::vector<double>>& series) {
  int m = static_cast<int>(series.size());
  if (m < 1) throw std::invalid_argument("joint_cumulant: need at least one series");
  long long n = static_cast<long long>(series[0].size());
  for (const auto& s : series)
    if (static_cast<long long>(s.size()) != n)
      throw std::invalid_argument("joint_cumulant: series length mismatch");
  if (n < m) throw std::invalid_argument("joint_cumulant: not enough samples");

  std::vector<double> shift(m, 0.0);
  for (int v = 0; v < m; ++v) {
    double acc = 0.0;
    for (double x : series[v]) acc += x;
    shift[v] = acc / static_cast<double>(n);
  }
  auto terms = build_terms(m);
  std::uint32_t n_masks = std::uint32_t{1} << m;
  std::vector<double> total(n_masks, 0.0);
  std::vector<double> x(m);
  for (long long i = 0; i < n; ++i) {
    for (int v = 0; v < m; ++v) x[v] = series[v][i] - shift[v];
    for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
      double prod = 1.0;
      for (int v = 0; v < m; ++v)
        if (mask >> v & 1) prod *= x[v];
      total[mask] += prod;
    }
  }
  total[0] = static_cast<double>(n);
  double value = eval_terms(terms, total, static_cast<double>(n));
  if (m == 1) value += shift[0];
  return value;
}

}  // namespace sykq
