#pragma once

#include <vector>

namespace sykq {

struct CumulantResult {
  double value = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
};

// Unbiased joint cumulant estimate (multivariate k-statistic) of m series,
// with a delete-one-batch jackknife standard error.  series[v][i] is sample i
// of variable v; all series must share one length N >= batches >= 2.
//
// The estimator is the Moebius sum over set partitions sigma of [m] of
// mu(sigma, 1) h_sigma, where h_sigma is the symmetric-mean estimate of the
// product of block moments, expanded into subset product sums
// T_S = sum_i prod_{v in S} x_v[i] over distinct-index tuples.  Exact
// unbiasedness holds for every m; the practical range here is m <= 4.
CumulantResult joint_cumulant_jackknife(const std::vector<std::vector<double>>& series,
                                        int batches);

// plain k-statistic on the full sample, no error bar
double joint_cumulant(const std::vector<std::vector<double>>& series);

}  // namespace sykq
