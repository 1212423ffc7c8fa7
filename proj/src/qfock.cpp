#include "sykq/qfock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "sykq/qmoments.hpp"

namespace sykq {

double q_inner(const FockWord& u, const FockWord& v, double q) {
  if (std::abs(q) > 1.0) throw std::invalid_argument("q_inner: |q| must be <= 1");
  if (u.degree() != v.degree()) return 0.0;
  int d = u.degree();
  if (d == 0) return 1.0;
  if (d > 20) throw std::invalid_argument("q_inner: degree too large for subset DP");
  std::vector<double> dp(std::size_t{1} << d, 0.0);
  dp[0] = 1.0;
  std::uint32_t full = (std::uint32_t{1} << d) - 1;
  for (std::uint32_t s = 0; s < full; ++s) {
    if (dp[s] == 0.0) continue;
    int r = std::popcount(s);
    for (int m = 0; m < d; ++m) {
      if (s >> m & 1) continue;
      if (u.letters[m] != v.letters[r]) continue;
      int inv = std::popcount(s >> (m + 1));
      dp[s | (std::uint32_t{1} << m)] += dp[s] * qpow(q, inv);
    }
  }
  return dp[full];
}

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

FockWord word_at(std::int64_t index, int p, int degree) {
  std::vector<int> letters(degree);
  for (int t = degree - 1; t >= 0; --t) {
    letters[t] = static_cast<int>(index % p) + 1;
    index /= p;
  }
  return FockWord(std::move(letters));
}

}  // namespace

Eigen::MatrixXd FockOperators::field(int color) const {
  if (color < 1 || color > colors) throw std::invalid_argument("field: color out of range");
  return creation[color - 1] + annihilation[color - 1];
}

std::int64_t FockOperators::word_index(const FockWord& w) const {
  if (w.degree() > degree_cap) throw std::invalid_argument("word_index: degree exceeds cap");
  std::int64_t local = 0;
  for (int l : w.letters) {
    if (l < 1 || l > colors) throw std::invalid_argument("word_index: letter out of range");
    local = local * colors + (l - 1);
  }
  return offset[w.degree()] + local;
}

FockOperators build_operators(int colors, double q, int degree_cap) {
  if (colors < 1) throw std::invalid_argument("build_operators: need at least one color");
  if (degree_cap < 1) throw std::invalid_argument("build_operators: degree cap must be >= 1");
  if (std::abs(q) >= 1.0)
    throw std::invalid_argument(
        "build_operators: |q| < 1 required (the Gram form is degenerate at q = +-1; use the "
        "combinatorial pairing sum q_wick_moment for those endpoints)");

  FockOperators f;
  f.colors = colors;
  f.degree_cap = degree_cap;
  f.q = q;
  f.offset.resize(degree_cap + 2, 0);
  for (int d = 0; d <= degree_cap; ++d) f.offset[d + 1] = f.offset[d] + ipow(colors, d);
  f.dim = f.offset[degree_cap + 1];
  if (f.dim > 4096) throw std::invalid_argument("build_operators: dimension exceeds 4096");

  std::vector<std::vector<FockWord>> words(degree_cap + 1);
  for (int d = 0; d <= degree_cap; ++d) {
    std::int64_t count = ipow(colors, d);
    words[d].reserve(count);
    for (std::int64_t i = 0; i < count; ++i) words[d].push_back(word_at(i, colors, d));
  }

  f.gram.resize(degree_cap + 1);
  for (int d = 0; d <= degree_cap; ++d) {
    std::int64_t count = ipow(colors, d);
    Eigen::MatrixXd g(count, count);
    for (std::int64_t a = 0; a < count; ++a)
      for (std::int64_t b = a; b < count; ++b) {
        double v = q_inner(words[d][a], words[d][b], q);
        g(a, b) = v;
        g(b, a) = v;
      }
    f.gram[d] = std::move(g);
  }

  f.creation.assign(colors, Eigen::MatrixXd::Zero(f.dim, f.dim));
  f.annihilation.assign(colors, Eigen::MatrixXd::Zero(f.dim, f.dim));
  for (int c = 0; c < colors; ++c) {
    for (int d = 0; d + 1 <= degree_cap; ++d) {
      std::int64_t lo = ipow(colors, d);
      // prepending letter c+1 sends local index i to c*p^d + i
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(lo * colors, lo);
      for (std::int64_t i = 0; i < lo; ++i) m(c * lo + i, i) = 1.0;
      f.creation[c].block(f.offset[d + 1], f.offset[d], lo * colors, lo) = m;
      Eigen::MatrixXd adj =
          f.gram[d].ldlt().solve(m.transpose() * f.gram[d + 1]);
      f.annihilation[c].block(f.offset[d], f.offset[d + 1], lo, lo * colors) = adj;
    }
  }
  return f;
}

double vacuum_moment(const std::vector<int>& eps, double q, int degree_cap) {
  int k = static_cast<int>(eps.size());
  if (k == 0) return 1.0;
  int colors = 0;
  for (int e : eps) {
    if (e < 1) throw std::invalid_argument("vacuum_moment: colors are 1-based");
    colors = std::max(colors, e);
  }
  int needed = (k + 1) / 2;
  if (degree_cap < 0) degree_cap = needed;
  if (2 * degree_cap < k)
    throw std::invalid_argument(
        "vacuum_moment: degree cap would truncate a live path; need 2*cap >= word length");
  return vacuum_moment(eps, build_operators(colors, q, degree_cap));
}

double vacuum_moment(const std::vector<int>& eps, const FockOperators& ops) {
  int k = static_cast<int>(eps.size());
  if (k == 0) return 1.0;
  if (2 * ops.degree_cap < k)
    throw std::invalid_argument(
        "vacuum_moment: degree cap would truncate a live path; need 2*cap >= word length");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ops.dim);
  v[0] = 1.0;
  for (int t = k - 1; t >= 0; --t) v = ops.field(eps[t]) * v;
  return v[0];
}

std::complex<double> cauchy_continued_fraction(std::complex<double> z, double q, int depth) {
  if (z.imag() < 0.0)
    throw std::invalid_argument("cauchy_continued_fraction: Im z >= 0 required");
  if (depth < 1) throw std::invalid_argument("cauchy_continued_fraction: depth must be >= 1");
  std::vector<double> level(depth + 1, 0.0);
  double qp = 1.0;
  for (int j = 1; j <= depth; ++j) {
    level[j] = (j == 1) ? 1.0 : level[j - 1] + qp;
    qp *= q;
  }
  // level[j] = 1 + q + ... + q^{j-1}
  std::complex<double> k = 0.0;
  for (int j = depth; j >= 1; --j) k = 1.0 / (z - level[j] * k);
  return k;
}

std::vector<double> cauchy_series_moments(double q, int k_max, int depth) {
  if (k_max < 0) throw std::invalid_argument("cauchy_series_moments: k_max must be >= 0");
  if (depth < 1) throw std::invalid_argument("cauchy_series_moments: depth must be >= 1");
  int terms = k_max + 1;
  std::vector<double> level(depth + 1, 0.0);
  double qp = 1.0;
  for (int j = 1; j <= depth; ++j) {
    level[j] = (j == 1) ? 1.0 : level[j - 1] + qp;
    qp *= q;
  }
  // S_j(w) = 1/(1 - [j]_q w^2 S_{j+1}(w)), truncated to order k_max
  std::vector<double> s(terms, 0.0), u(terms, 0.0), next(terms, 0.0);
  s[0] = 1.0;
  for (int j = depth; j >= 1; --j) {
    std::fill(u.begin(), u.end(), 0.0);
    for (int i = 0; i + 2 < terms; ++i) u[i + 2] = level[j] * s[i];
    next[0] = 1.0;
    for (int n = 1; n < terms; ++n) {
      double acc = 0.0;
      for (int i = 1; i <= n; ++i) acc += u[i] * next[n - i];
      next[n] = acc;
    }
    std::swap(s, next);
  }
  return s;
}

std::complex<double> semicircle_cauchy(std::complex<double> z) {
  if (z.imag() < 0.0) throw std::invalid_argument("semicircle_cauchy: Im z >= 0 required");
  return (z - std::sqrt(z - 2.0) * std::sqrt(z + 2.0)) / 2.0;
}

}  // namespace sykq
