#include "sykq/pauli.hpp"

#include <algorithm>

namespace sykq {

namespace {

std::uint64_t reverse_low_bits(std::uint64_t m, int width) {
  std::uint64_t out = 0;
  for (int s = 0; s < width; ++s)
    if (m >> s & 1) out |= std::uint64_t{1} << (width - 1 - s);
  return out;
}

constexpr std::complex<double> kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

std::string to_string(const PauliString& p) {
  int y_count = std::popcount(p.x_mask & p.z_mask);
  int shown = ((p.phase - y_count) % 4 + 4) % 4;
  std::string out = "i^" + std::to_string(shown) + " \xc2\xb7";
  for (int s = 0; s < p.sites; ++s) {
    bool x = p.x_mask >> s & 1, z = p.z_mask >> s & 1;
    out += ' ';
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : '1');
  }
  return out;
}

Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& v) {
  const std::int64_t dim = std::int64_t{1} << p.sites;
  if (v.size() != dim) throw std::invalid_argument("apply: dimension mismatch");
  std::uint64_t xm = reverse_low_bits(p.x_mask, p.sites);
  std::uint64_t zm = reverse_low_bits(p.z_mask, p.sites);
  std::complex<double> c = kUnit[p.phase & 3];
  Eigen::VectorXcd out(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    double sign = (std::popcount(static_cast<std::uint64_t>(b) & zm) & 1) ? -1.0 : 1.0;
    out[static_cast<std::int64_t>(b ^ static_cast<std::int64_t>(xm))] = c * sign * v[b];
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p, int max_sites) {
  if (p.sites > max_sites)
    throw std::invalid_argument("dense_matrix: site count exceeds oracle cap");
  using M = Eigen::MatrixXcd;
  M site_i = M::Identity(2, 2);
  M site_x(2, 2), site_z(2, 2);
  site_x << 0, 1, 1, 0;
  site_z << 1, 0, 0, -1;
  M out = M::Identity(1, 1);
  for (int s = p.sites - 1; s >= 0; --s) {  // site 0 ends up outermost (high index bits)
    bool x = p.x_mask >> s & 1, z = p.z_mask >> s & 1;
    M factor = site_i;
    if (x && z) factor = site_x * site_z;
    else if (x) factor = site_x;
    else if (z) factor = site_z;
    M next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = factor(a, b) * out;
    out = next;
  }
  return kUnit[p.phase & 3] * out;
}

MajoranaRep::MajoranaRep(int n) : n_(n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("MajoranaRep: n must be even and positive");
  if (n > 128) throw std::invalid_argument("MajoranaRep: n exceeds 128 (64-site register)");
}

PauliString majorana(int i, const MajoranaRep& rep) {
  int r = rep.sites();
  if (i < 1 || i > rep.n()) throw std::out_of_range("majorana: index out of range");
  int j = i <= r ? i : i - r;
  PauliString p = PauliString::identity(r);
  p.z_mask = (std::uint64_t{1} << (j - 1)) - 1;  // Z on sites 1..j-1
  p.x_mask = std::uint64_t{1} << (j - 1);
  if (i > r) {
    p.z_mask |= std::uint64_t{1} << (j - 1);  // Y site: both bits, phase i
    p.phase = 1;
  }
  return p;
}

MultiIndex::MultiIndex(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
  if (n <= 0 || n % 2 != 0 || n > 128) throw std::invalid_argument("MultiIndex: bad n");
  int q = static_cast<int>(entries_.size());
  if (q < 1 || q > n / 2)
    throw std::invalid_argument("MultiIndex: need 1 <= q <= n/2");
  for (int t = 0; t < q; ++t) {
    if (entries_[t] < 1 || entries_[t] > n)
      throw std::invalid_argument("MultiIndex: entry out of range");
    if (t > 0 && entries_[t] <= entries_[t - 1])
      throw std::invalid_argument("MultiIndex: entries must be strictly increasing");
    if (entries_[t] <= 64) bits_ |= std::uint64_t{1} << (entries_[t] - 1);
  }
  if (n > 64)
    throw std::invalid_argument("MultiIndex: n > 64 not supported by single-word bitset");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw std::overflow_error("binomial: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t MultiIndex::rank() const {
  int q = this->q();
  std::uint64_t rank = 0;
  int prev = 1;
  for (int t = 0; t < q; ++t) {
    for (int v = prev; v < entries_[t]; ++v) rank += binomial(n_ - v, q - 1 - t);
    prev = entries_[t] + 1;
  }
  return rank;
}

MultiIndex MultiIndex::from_rank(int n, int q, std::uint64_t rank) {
  if (rank >= binomial(n, q)) throw std::out_of_range("MultiIndex: rank out of range");
  std::vector<int> entries(q);
  int v = 1;
  for (int t = 0; t < q; ++t) {
    while (true) {
      std::uint64_t below = binomial(n - v, q - 1 - t);
      if (rank < below) break;
      rank -= below;
      ++v;
    }
    entries[t] = v++;
  }
  return MultiIndex(n, std::move(entries));
}

PauliString psi_R(const MultiIndex& R, const MajoranaRep& rep) {
  if (R.n() != rep.n()) throw std::invalid_argument("psi_R: n mismatch");
  PauliString p = PauliString::identity(rep.sites());
  for (int i : R.entries()) p = multiply(p, majorana(i, rep));
  p.phase = (p.phase + R.q() / 2) & 3;
  return p;
}

int commutation_sign(const MultiIndex& Q, const MultiIndex& R) {
  if (Q.n() != R.n() || Q.q() != R.q())
    throw std::invalid_argument("commutation_sign: indices from different models");
  if (Q == R) throw std::invalid_argument("commutation_sign: indices must be distinct");
  return ((Q.q() + Q.intersection_size(R)) & 1) ? -1 : 1;
}

int trace_word(const std::vector<MultiIndex>& alphas, const MajoranaRep& rep) {
  if (alphas.empty()) return 1;
  int q = alphas.front().q();
  PauliString w = PauliString::identity(rep.sites());
  for (const auto& a : alphas) {
    if (a.n() != rep.n() || a.q() != q)
      throw std::invalid_argument("trace_word: mixed n or q_n");
    w = multiply(w, psi_R(a, rep));
  }
  if (!w.identity_mask()) return 0;
  if (w.phase & 1)
    throw std::domain_error("trace_word: word has imaginary trace (odd index multiplicities)");
  return w.phase == 0 ? 1 : -1;
}

void for_each_multi_index(int n, int q, const std::function<void(const MultiIndex&)>& fn) {
  std::vector<int> entries(q);
  for (int t = 0; t < q; ++t) entries[t] = t + 1;
  while (true) {
    fn(MultiIndex(n, entries));
    int t = q - 1;
    while (t >= 0 && entries[t] == n - (q - 1 - t)) --t;
    if (t < 0) return;
    ++entries[t];
    for (int u = t + 1; u < q; ++u) entries[u] = entries[u - 1] + 1;
  }
}

std::vector<PauliString> make_psi_table(const MajoranaRep& rep, int q_n) {
  std::vector<PauliString> table;
  table.reserve(binomial(rep.n(), q_n));
  for_each_multi_index(rep.n(), q_n,
                       [&](const MultiIndex& R) { table.push_back(psi_R(R, rep)); });
  return table;
}

}  // namespace sykq
