#pragma once

// Truncated q-deformed Fock space over p orthonormal colors: word basis,
// Gram metric, creation/annihilation matrices, vacuum moments, and the
// scalar continued-fraction Cauchy transform of the one-color limit law.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace sykq {

// Tensor word over the color alphabet {1..p}; the empty word is the vacuum.
struct FockWord {
  std::vector<int> letters;

  FockWord() = default;
  explicit FockWord(std::vector<int> l) : letters(std::move(l)) {}
  int degree() const { return static_cast<int>(letters.size()); }
};

// <u, v>_q = sum over letter-matching permutations sigma of q^{inv(sigma)};
// 0 when degrees differ.  Evaluated by a subset DP, cost O(2^d * d).
double q_inner(const FockWord& u, const FockWord& v, double q);

// Matrices of a*(h_i), a(h_i) on span{words of degree <= degree_cap}, in the
// raw word basis with the Gram metric carried explicitly.  Blocks are ordered
// by degree, words within a degree ordered lexicographically, so the vacuum
// is coordinate 0.  Adjoints are taken per degree as G^-1 M^T G.
struct FockOperators {
  int colors = 0;
  int degree_cap = 0;
  double q = 0.0;
  std::int64_t dim = 0;
  std::vector<std::int64_t> offset;           // block start per degree
  std::vector<Eigen::MatrixXd> gram;          // gram[d] is p^d x p^d
  std::vector<Eigen::MatrixXd> creation;      // per color, dim x dim
  std::vector<Eigen::MatrixXd> annihilation;  // per color, dim x dim

  Eigen::MatrixXd field(int color) const;  // a*(h_color) + a(h_color)
  std::int64_t word_index(const FockWord& w) const;
};

// Requires |q| < 1 (the Gram metric degenerates at q = +-1; use the
// combinatorial pairing sum for those endpoints) and degree_cap >= 1.
FockOperators build_operators(int colors, double q, int degree_cap);

// <vacuum, s(h_eps1) ... s(h_epsk) vacuum>_q with s = a* + a.  Exact when
// 2*degree_cap >= k; smaller caps would cut live paths and are rejected.
// degree_cap = -1 picks the smallest exact cap.
double vacuum_moment(const std::vector<int>& eps, double q, int degree_cap = -1);

// Same moment evaluated on prebuilt operators (amortizes the build across
// many words).
double vacuum_moment(const std::vector<int>& eps, const FockOperators& ops);

// G(z) = 1/(z - [1]_q/(z - [2]_q/(z - ...))) truncated at `depth` levels,
// evaluated by backward recurrence; [j]_q = 1 + q + ... + q^{j-1}.
// Rejects Im z < 0; for Im z > 0 the value lies in the open lower half-plane,
// and real z outside the spectrum converges too.
std::complex<double> cauchy_continued_fraction(std::complex<double> z, double q,
                                               int depth = 500);

// Moments m_0..m_{k_max} of the law behind the continued fraction, read off
// as Taylor coefficients of G(1/w)/w by truncated series recurrence.
std::vector<double> cauchy_series_moments(double q, int k_max, int depth = 200);

// Closed form at q = 0: G(z) = (z - sqrt(z-2)sqrt(z+2))/2 on the closed
// upper half-plane.
std::complex<double> semicircle_cauchy(std::complex<double> z);

}  // namespace sykq
