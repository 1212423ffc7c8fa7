#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sykq {

// Signed Pauli string on `sites` qubits in the symplectic encoding: the
// operator is i^phase * prod_s X_s^{x} Z_s^{z}, site s reading the s-th bit of
// each mask.  A site with both bits set carries X*Z, i.e. Y up to the phase
// absorbed in the global factor.
struct PauliString {
  int sites = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int phase = 0;  // mod 4

  static PauliString identity(int sites) {
    if (sites < 0 || sites > 64) throw std::invalid_argument("PauliString: sites must be in [0,64]");
    return PauliString{sites, 0, 0, 0};
  }
  bool identity_mask() const { return x_mask == 0 && z_mask == 0; }
  bool operator==(const PauliString& o) const {
    return sites == o.sites && x_mask == o.x_mask && z_mask == o.z_mask && phase == o.phase;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }
};

// Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1} per site, so the product picks
// up 2*popcount(z1 & x2) quarter turns.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.sites != b.sites) throw std::invalid_argument("multiply: site counts differ");
  PauliString r;
  r.sites = a.sites;
  r.x_mask = a.x_mask ^ b.x_mask;
  r.z_mask = a.z_mask ^ b.z_mask;
  r.phase = (a.phase + b.phase + 2 * (std::popcount(a.z_mask & b.x_mask) & 1)) & 3;
  return r;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return ((std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask)) & 1) == 0;
}

inline std::complex<double> normalized_trace(const PauliString& p) {
  if (!p.identity_mask()) return {0.0, 0.0};
  static constexpr std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[p.phase & 3];
}

// e.g. "i^1 · X Z Y 1": displayed phase exponent is relative to the letter
// string with literal Y factors (Y = i X Z pulls one i out per Y site).
std::string to_string(const PauliString& p);

// matrix-free matvec; site s of the string acts on index bit (sites-1-s)
Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& v);

// explicit Kronecker-product construction, the small-n oracle
Eigen::MatrixXcd dense_matrix(const PauliString& p, int max_sites = 7);

class MajoranaRep {
 public:
  explicit MajoranaRep(int n);
  int n() const { return n_; }
  int sites() const { return n_ / 2; }

 private:
  int n_ = 0;
};

// psi_i, 1 <= i <= n: Z on sites before j, then X (i <= r) or Y (i = r + j)
PauliString majorana(int i, const MajoranaRep& rep);

// Strictly increasing tuple (i_1 < ... < i_q) of Majorana labels in [1, n].
class MultiIndex {
 public:
  MultiIndex(int n, std::vector<int> entries);
  static MultiIndex from_rank(int n, int q, std::uint64_t rank);

  int n() const { return n_; }
  int q() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }
  std::uint64_t bitset() const { return bits_; }
  std::uint64_t rank() const;  // position in lexicographic order over C(n, q)
  int intersection_size(const MultiIndex& o) const {
    return std::popcount(bits_ & o.bits_);
  }

  bool operator==(const MultiIndex& o) const { return n_ == o.n_ && bits_ == o.bits_; }
  bool operator!=(const MultiIndex& o) const { return !(*this == o); }
  bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

 private:
  int n_ = 0;
  std::vector<int> entries_;
  std::uint64_t bits_ = 0;
};

// Psi_R = psi_{i_1} ... psi_{i_q} * i^{floor(q/2)}; hermitian, squares to I
PauliString psi_R(const MultiIndex& R, const MajoranaRep& rep);

// (-1)^{q + |Q cap R|}, the sign in Psi_Q Psi_R = sign * Psi_R Psi_Q
int commutation_sign(const MultiIndex& Q, const MultiIndex& R);

// Exact normalized trace of Psi_{alpha(1)} ... Psi_{alpha(k)} by string
// multiplication.  Values are 0 or +/-1 whenever every index multiplicity is
// even; words with odd multiplicities can carry a factor +/-i, which is outside
// the contract and throws.
int trace_word(const std::vector<MultiIndex>& alphas, const MajoranaRep& rep);

std::uint64_t binomial(int n, int k);

// ascending lexicographic order over all q-subsets of [1, n]
void for_each_multi_index(int n, int q, const std::function<void(const MultiIndex&)>& fn);

// Psi strings for every R in I_n, indexed by lexicographic rank
std::vector<PauliString> make_psi_table(const MajoranaRep& rep, int q_n);

}  // namespace sykq
