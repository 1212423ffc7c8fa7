#include "sykq/qmoments.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "sykq/parallel.hpp"

namespace sykq {

QParameter q_from_lambda(double lambda, bool even_parity) {
  if (lambda < 0) throw std::invalid_argument("q_from_lambda: lambda must be >= 0");
  QParameter p;
  p.lambda = lambda;
  p.even_parity = even_parity;
  double mag = std::isinf(lambda) ? 0.0 : std::exp(-2.0 * lambda);
  p.q = even_parity ? mag : -mag;
  return p;
}

QParameter q_from_model(const FiniteModel& model) {
  double lambda = static_cast<double>(model.q_n) * model.q_n / model.n;
  return q_from_lambda(lambda, model.q_n % 2 == 0);
}

BudgetExceeded::BudgetExceeded(std::uint64_t required_, std::uint64_t limit_)
    : std::runtime_error("compute budget exceeded: needs " + std::to_string(required_) +
                         " trace evaluations, limit " + std::to_string(limit_) +
                         "; reduce n or k, or raise the budget"),
      required(required_),
      limit(limit_) {}

double qpow(double q, int e) {
  if (e == 0) return 1.0;
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= q;
  return acc;
}

namespace {

bool pairs_match_colors(const PairPartition& pi, const std::vector<int>& eps) {
  for (auto [a, b] : pi.pairs())
    if (eps[a] != eps[b]) return false;
  return true;
}

}  // namespace

double q_wick_moment(const std::vector<int>& eps, double q) {
  int k = static_cast<int>(eps.size());
  if (k % 2 != 0) return 0.0;
  double acc = 0.0;
  for_each_pair_partition(k, [&](const PairPartition& pi) {
    if (pairs_match_colors(pi, eps)) acc += qpow(q, crossings(pi));
  });
  return acc;
}

double q_brownian_moment(const std::vector<double>& times, double q) {
  int k = static_cast<int>(times.size());
  for (double t : times)
    if (t < 0) throw std::invalid_argument("q_brownian_moment: negative time");
  if (k % 2 != 0) return 0.0;
  double acc = 0.0;
  for_each_pair_partition(k, [&](const PairPartition& pi) {
    double w = qpow(q, crossings(pi));
    for (auto [a, b] : pi.pairs()) w *= std::min(times[a], times[b]);
    acc += w;
  });
  return acc;
}

FluctuationSpec::FluctuationSpec(std::vector<int> sizes_, std::vector<int> eps_)
    : sizes(std::move(sizes_)), eps(std::move(eps_)) {
  if (sizes.empty()) throw std::invalid_argument("FluctuationSpec: empty sizes");
  for (int s : sizes)
    if (s <= 0) throw std::invalid_argument("FluctuationSpec: nonpositive size");
  if (static_cast<int>(eps.size()) != total())
    throw std::invalid_argument("FluctuationSpec: eps length must equal sum of sizes");
}

int FluctuationSpec::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), 0);
}

std::vector<std::vector<int>> FluctuationSpec::words() const {
  std::vector<std::vector<int>> out;
  int at = 0;
  for (int s : sizes) {
    out.emplace_back(eps.begin() + at, eps.begin() + at + s);
    at += s;
  }
  return out;
}

double fluctuation_limit(const FluctuationSpec& spec, double q) {
  int k = spec.total();
  int m = spec.order();
  for (int s : spec.sizes)
    if (s % 2 != 0) return 0.0;  // no pairing fits inside theta
  SetPartition theta = spec.theta().as_set_partition();
  int target_blocks = k / 2 - m + 1;
  if (target_blocks < 1) return 0.0;

  // pairings inside theta: independent pairings of each interval, glued
  std::vector<std::pair<SetPartition, int>> inner;  // (pi', cr(pi'))
  {
    std::vector<std::vector<PairPartition>> per_interval;
    int at = 0;
    for (int s : spec.sizes) {
      per_interval.push_back(enumerate_pair_partitions(s));
      at += s;
    }
    std::vector<size_t> pick(per_interval.size(), 0);
    while (true) {
      std::vector<std::pair<int, int>> glued;
      int offset = 0;
      for (size_t i = 0; i < per_interval.size(); ++i) {
        for (auto [a, b] : per_interval[i][pick[i]].pairs())
          glued.emplace_back(a + offset, b + offset);
        offset += spec.sizes[i];
      }
      PairPartition pp(k, std::move(glued));
      inner.emplace_back(pp.as_set_partition(), crossings(pp));
      size_t lvl = 0;
      for (; lvl < pick.size(); ++lvl) {
        if (++pick[lvl] < per_interval[lvl].size()) break;
        pick[lvl] = 0;
      }
      if (lvl == pick.size()) break;
    }
  }

  double acc = 0.0;
  for_each_pair_partition(k, [&](const PairPartition& pi) {
    if (!pairs_match_colors(pi, spec.eps)) return;
    SetPartition ps = pi.as_set_partition();
    if (join(ps, theta).block_count() != 1) return;
    for (const auto& [inner_sp, cr_inner] : inner)
      if (join(ps, inner_sp).block_count() == target_blocks) acc += qpow(q, cr_inner);
  });
  return acc;
}

int pairing_trace_sign(const PairPartition& pi, const std::vector<MultiIndex>& block_values,
                       int q_n) {
  const auto& ps = pi.pairs();
  if (block_values.size() != ps.size())
    throw std::invalid_argument("pairing_trace_sign: one value per block required");
  long long expo = static_cast<long long>(q_n) * crossings(pi);
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j) {
      auto [a, b] = ps[i];
      auto [c, d] = ps[j];
      bool cross = (a < c && c < b && b < d) || (c < a && a < d && d < b);
      if (cross) expo += block_values[i].intersection_size(block_values[j]);
    }
  return (expo & 1) ? -1 : 1;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int e) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < e; ++i) {
    acc *= base;
    if (acc > UINT64_MAX) throw std::overflow_error("power overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

// Sum of word traces over assignments of index values to the blocks of a
// pairing, with an optional pinned block.  All traces are +/-1 here: every
// index occurs an even number of times, so the accumulated string is +/-I.
struct PairingSum {
  int k = 0, b = 0;
  std::uint32_t count = 0;          // |I_n|
  const PauliString* table = nullptr;
  std::vector<int> blk;             // block of each slot
  std::vector<int> boundary;        // first slot of each block
  int pinned_block = -1;
  std::uint32_t pinned_value = 0;
  std::uint32_t first_lo = 0, first_hi = 0;  // value range for block 0
  std::vector<std::uint32_t> vals;
  std::vector<PauliString> prefix;  // prefix[s] = product of slots < s

  long long run() {
    vals.assign(b, 0);
    prefix.assign(k + 1, PauliString::identity(table[0].sites));
    if (first_hi == 0) first_hi = count;
    return descend(0);
  }

  long long descend(int j) {
    int stop = (j + 1 < b) ? boundary[j + 1] : k;
    long long acc = 0;
    if (j == pinned_block) {
      vals[j] = pinned_value;
      acc = extend_and_go(j, stop);
    } else {
      std::uint32_t lo = (j == 0) ? first_lo : 0;
      std::uint32_t hi = (j == 0) ? first_hi : count;
      for (std::uint32_t v = lo; v < hi; ++v) {
        vals[j] = v;
        acc += extend_and_go(j, stop);
      }
    }
    return acc;
  }

  long long extend_and_go(int j, int stop) {
    for (int s = boundary[j]; s < stop; ++s)
      prefix[s + 1] = multiply(prefix[s], table[vals[blk[s]]]);
    if (j + 1 < b) return descend(j + 1);
    const PauliString& w = prefix[k];
    assert(w.identity_mask() && (w.phase & 1) == 0);
    return 1 - (w.phase & 2);
  }
};

}  // namespace

Rational s_pi(const PairPartition& pi, const FiniteModel& model, const EvalBudget& budget) {
  int k = pi.size();
  if (k == 0) return Rational(1);
  int b = k / 2;
  std::uint64_t count = model.index_count();
  std::uint64_t evals = checked_pow(count, b);
  if (evals > budget.max_trace_evals) throw BudgetExceeded(evals, budget.max_trace_evals);
  if (count > UINT32_MAX) throw std::overflow_error("s_pi: index set too large");

  auto table = make_psi_table(model.rep(), model.q_n);
  int threads = budget.threads;
  if (threads <= 0) threads = hardware_threads();
  std::vector<long long> partial(threads, 0);
  parallel_chunks(count, threads, [&](std::uint64_t lo, std::uint64_t hi, int chunk) {
    if (lo == hi) return;
    PairingSum ps;
    ps.k = k;
    ps.b = b;
    ps.count = static_cast<std::uint32_t>(count);
    ps.table = table.data();
    ps.blk = pi.as_set_partition().rgs();
    for (auto [plo, phi] : pi.pairs()) ps.boundary.push_back(plo);
    ps.first_lo = static_cast<std::uint32_t>(lo);
    ps.first_hi = static_cast<std::uint32_t>(hi);
    partial[chunk] = ps.run();
  });
  long long num = 0;
  for (long long p : partial) num += p;
  return Rational(num, static_cast<std::int64_t>(evals));
}

Rational s_pi_restricted(const PairPartition& pi, int block_index, const MultiIndex& R,
                         const FiniteModel& model, const EvalBudget& budget) {
  int k = pi.size();
  int b = k / 2;
  if (block_index < 0 || block_index >= b)
    throw std::out_of_range("s_pi_restricted: block index out of range");
  if (R.n() != model.n || R.q() != model.q_n)
    throw std::invalid_argument("s_pi_restricted: value from a different model");
  std::uint64_t count = model.index_count();
  std::uint64_t evals = checked_pow(count, b - 1);
  if (evals > budget.max_trace_evals) throw BudgetExceeded(evals, budget.max_trace_evals);
  if (count > UINT32_MAX) throw std::overflow_error("s_pi_restricted: index set too large");

  auto table = make_psi_table(model.rep(), model.q_n);
  PairingSum ps;
  ps.k = k;
  ps.b = b;
  ps.count = static_cast<std::uint32_t>(count);
  ps.table = table.data();
  ps.blk = pi.as_set_partition().rgs();
  for (auto [lo, hi] : pi.pairs()) ps.boundary.push_back(lo);
  ps.pinned_block = block_index;
  ps.pinned_value = static_cast<std::uint32_t>(R.rank());
  long long num = ps.run();
  return Rational(num, static_cast<std::int64_t>(evals));
}

namespace {

long long double_factorial(int m) {  // (m-1)!! for even m
  long long acc = 1;
  for (int i = m - 1; i > 1; i -= 2) acc *= i;
  return acc;
}

struct ExactTrace {
  long long re = 0, im = 0;
};

// trace of one word under a block-value assignment; 0, +/-1, or +/-i
ExactTrace word_trace(const std::vector<int>& slots, const std::vector<int>& blk,
                      const std::vector<std::uint32_t>& vals, const PauliString* table,
                      int sites) {
  PauliString w = PauliString::identity(sites);
  for (int s : slots) w = multiply(w, table[vals[blk[s]]]);
  if (!w.identity_mask()) return {0, 0};
  switch (w.phase & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

Rational exact_mixed_trace_moment(const FiniteModel& model,
                                  const std::vector<std::vector<int>>& words,
                                  const EvalBudget& budget) {
  std::vector<int> flat;
  std::vector<std::vector<int>> word_slots;
  for (const auto& w : words) {
    std::vector<int> slots;
    for (int c : w) {
      slots.push_back(static_cast<int>(flat.size()));
      flat.push_back(c);
    }
    word_slots.push_back(std::move(slots));
  }
  int K = static_cast<int>(flat.size());
  if (K == 0) return Rational(1);
  if (K % 2 != 0) return Rational(0);  // Gaussian symmetry: no all-even kernel exists

  std::uint64_t count = model.index_count();
  if (count > UINT32_MAX) throw std::overflow_error("exact_mixed_trace_moment: index set too large");
  SetPartition color_kernel = kernel(flat);

  // admissible kernels: every (block, color) class has even size
  struct Kernel {
    std::vector<int> blk;
    int blocks;
    long long weight;
  };
  std::vector<Kernel> kernels;
  unsigned __int128 evals = 0;
  for_each_set_partition(K, [&](const SetPartition& sigma) {
    for (const auto& block : sigma.blocks())
      if (block.size() % 2 != 0) return;
    long long weight = 1;
    SetPartition classes = meet(sigma, color_kernel);
    for (const auto& cls : classes.blocks()) {
      if (cls.size() % 2 != 0) { weight = 0; break; }
      weight *= double_factorial(static_cast<int>(cls.size()));
    }
    if (weight == 0) return;
    unsigned __int128 assignments = 1;
    for (int i = 0; i < sigma.block_count(); ++i) assignments *= count - i;
    evals += assignments;
    kernels.push_back({sigma.rgs(), sigma.block_count(), weight});
  });
  if (evals > budget.max_trace_evals)
    throw BudgetExceeded(evals > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(evals),
                         budget.max_trace_evals);

  auto table = make_psi_table(model.rep(), model.q_n);
  long long acc_re = 0, acc_im = 0;

  std::vector<std::uint32_t> vals;
  for (const auto& ker : kernels) {
    vals.assign(ker.blocks, 0);
    // injective assignment of index values to kernel blocks
    std::function<void(int)> assign = [&](int j) {
      if (j == ker.blocks) {
        ExactTrace prod{1, 0};
        for (const auto& slots : word_slots) {
          ExactTrace t = word_trace(slots, ker.blk, vals, table.data(), model.sites());
          if (t.re == 0 && t.im == 0) return;
          prod = {prod.re * t.re - prod.im * t.im, prod.re * t.im + prod.im * t.re};
        }
        acc_re += ker.weight * prod.re;
        acc_im += ker.weight * prod.im;
        return;
      }
      for (std::uint32_t v = 0; v < count; ++v) {
        bool used = false;
        for (int i = 0; i < j; ++i)
          if (vals[i] == v) { used = true; break; }
        if (used) continue;
        vals[j] = v;
        assign(j + 1);
      }
    };
    assign(0);
  }
  if (acc_im != 0)
    throw std::logic_error("exact_mixed_trace_moment: imaginary part should cancel");
  return Rational(acc_re, static_cast<std::int64_t>(checked_pow(count, K / 2)));
}

Rational exact_finite_n_moment(const std::vector<int>& eps, const FiniteModel& model,
                               const EvalBudget& budget) {
  return exact_mixed_trace_moment(model, {eps}, budget);
}

Rational exact_finite_n_fluctuation(const FluctuationSpec& spec, const FiniteModel& model,
                                    const EvalBudget& budget) {
  int m = spec.order();
  auto words = spec.words();
  Rational acc(0);
  for_each_set_partition(m, [&](const SetPartition& sigma) {
    Rational term(mobius_to_top(sigma));
    for (const auto& block : sigma.blocks()) {
      std::vector<std::vector<int>> sub;
      for (int j : block) sub.push_back(words[j]);
      term *= exact_mixed_trace_moment(model, sub, budget);
    }
    acc += term;
  });
  Rational scale(1);
  std::int64_t count = static_cast<std::int64_t>(model.index_count());
  for (int i = 1; i < m; ++i) scale *= Rational(count);
  return acc * scale;
}

double exact_process_moment(const std::vector<double>& times, const FiniteModel& model,
                            const EvalBudget& budget) {
  int k = static_cast<int>(times.size());
  for (double t : times)
    if (t < 0) throw std::invalid_argument("exact_process_moment: negative time");
  if (k % 2 != 0) return 0.0;
  double acc = 0.0;
  for_each_pair_partition(k, [&](const PairPartition& pi) {
    double w = 1.0;
    for (auto [a, b] : pi.pairs()) w *= std::min(times[a], times[b]);
    acc += w * s_pi(pi, model, budget).to_double();
  });
  return acc;
}

double classical_cumulant(int m, const std::function<double(const std::vector<int>&)>& subset_moment) {
  if (m < 1) throw std::invalid_argument("classical_cumulant: order must be >= 1");
  double acc = 0.0;
  for_each_set_partition(m, [&](const SetPartition& sigma) {
    double term = static_cast<double>(mobius_to_top(sigma));
    for (const auto& block : sigma.blocks()) term *= subset_moment(block);
    acc += term;
  });
  return acc;
}

Rational pairwise_sign_expectation(const FiniteModel& model) {
  int q = model.q_n;
  std::int64_t num = 0;
  for (int j = 0; j <= q; ++j) {
    std::int64_t ways = static_cast<std::int64_t>(binomial(q, j)) *
                        static_cast<std::int64_t>(binomial(model.n - q, q - j));
    num += (j % 2 == 0) ? ways : -ways;
  }
  return Rational(num, static_cast<std::int64_t>(model.index_count()));
}

}  // namespace sykq
