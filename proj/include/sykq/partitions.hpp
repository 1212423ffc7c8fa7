#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sykq {

// Partition of {0, 1, ..., k-1} in canonical form: blocks sorted by their
// minimum, elements ascending inside each block.  Rendered 1-based as
// "{1,3}{2,4}".
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(int k, std::vector<std::vector<int>> blocks);

  static SetPartition singletons(int k);
  static SetPartition full(int k);
  // labels[i] = block label of element i; any values, equality defines blocks
  static SetPartition from_labels(const std::vector<int>& labels);
  // parses the canonical 1-based text form, e.g. "{1,3}{2,4}"
  static SetPartition from_string(int k, const std::string& text);

  int size() const { return k_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_of(int element) const;
  // restricted growth string: block index of each element, blocks numbered by
  // first appearance
  std::vector<int> rgs() const;
  std::string str() const;

  bool operator==(const SetPartition& o) const { return k_ == o.k_ && blocks_ == o.blocks_; }
  bool operator!=(const SetPartition& o) const { return !(*this == o); }
  bool operator<(const SetPartition& o) const;  // lex on rgs, for use as map key

 private:
  int k_ = 0;
  std::vector<std::vector<int>> blocks_;
};

// Perfect matching of {0, ..., k-1}, k even.  Pairs stored (lo, hi), sorted by lo.
class PairPartition {
 public:
  PairPartition() = default;
  PairPartition(int k, std::vector<std::pair<int, int>> pairs);
  static PairPartition from_set_partition(const SetPartition& p);

  int size() const { return k_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int partner(int element) const;
  SetPartition as_set_partition() const;
  std::string str() const { return as_set_partition().str(); }

  bool operator==(const PairPartition& o) const { return k_ == o.k_ && pairs_ == o.pairs_; }
  bool operator!=(const PairPartition& o) const { return !(*this == o); }

 private:
  int k_ = 0;
  std::vector<std::pair<int, int>> pairs_;
};

// Composition (w_1, ..., w_m) of its total, viewed as the interval partition
// {1..w_1}{w_1+1..w_1+w_2}...
struct IntervalPartition {
  std::vector<int> sizes;
  IntervalPartition() = default;
  explicit IntervalPartition(std::vector<int> s);
  int size() const;
  int block_count() const { return static_cast<int>(sizes.size()); }
  SetPartition as_set_partition() const;
};

bool leq(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);

// partition whose blocks are the level sets of the color word
SetPartition kernel(const std::vector<int>& colors);

// restriction to a subset of the ground set (ascending), relabeled 0..|S|-1
SetPartition restrict_to(const SetPartition& p, const std::vector<int>& subset);

// Moebius function mu(p, 1) of the partition lattice: (-1)^(b-1) (b-1)!
long long mobius_to_top(const SetPartition& p);
long long mobius_to_top_blocks(int block_count);

// number of pairs (a,b),(c,d) with a < c < b < d
int crossings(const PairPartition& m);

// Enumeration order: pair element 0 with each larger partner in ascending
// order, recurse on what is left.  k odd yields nothing.
void for_each_pair_partition(int k, const std::function<void(const PairPartition&)>& fn);
std::vector<PairPartition> enumerate_pair_partitions(int k);

// Lexicographic restricted-growth-string order.
void for_each_set_partition(int m, const std::function<void(const SetPartition&)>& fn);
std::vector<SetPartition> enumerate_set_partitions(int m);

}  // namespace sykq
