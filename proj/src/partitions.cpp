#include "sykq/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace sykq {

namespace {

void canonicalize(int k, std::vector<std::vector<int>>& blocks) {
  std::vector<char> seen(k, 0);
  int count = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
    std::sort(b.begin(), b.end());
    for (int e : b) {
      if (e < 0 || e >= k) throw std::invalid_argument("SetPartition: element out of range");
      if (seen[e]) throw std::invalid_argument("SetPartition: repeated element");
      seen[e] = 1;
      ++count;
    }
  }
  if (count != k) throw std::invalid_argument("SetPartition: blocks do not cover ground set");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

SetPartition::SetPartition(int k, std::vector<std::vector<int>> blocks)
    : k_(k), blocks_(std::move(blocks)) {
  if (k < 0) throw std::invalid_argument("SetPartition: negative size");
  canonicalize(k_, blocks_);
}

SetPartition SetPartition::singletons(int k) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(k);
  for (int i = 0; i < k; ++i) blocks.push_back({i});
  return SetPartition(k, std::move(blocks));
}

SetPartition SetPartition::full(int k) {
  if (k == 0) return SetPartition();
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  return SetPartition(k, {all});
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
  int k = static_cast<int>(labels.size());
  std::vector<std::vector<int>> blocks;
  std::vector<std::pair<int, int>> label_to_block;  // (label, block idx)
  for (int i = 0; i < k; ++i) {
    int found = -1;
    for (auto& [lab, idx] : label_to_block)
      if (lab == labels[i]) { found = idx; break; }
    if (found < 0) {
      label_to_block.emplace_back(labels[i], static_cast<int>(blocks.size()));
      blocks.push_back({i});
    } else {
      blocks[found].push_back(i);
    }
  }
  return SetPartition(k, std::move(blocks));
}

SetPartition SetPartition::from_string(int k, const std::string& text) {
  std::vector<std::vector<int>> blocks;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    if (text[i] != '{') throw std::invalid_argument("SetPartition: expected '{' in " + text);
    ++i;
    std::vector<int> block;
    while (i < text.size() && text[i] != '}') {
      while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("SetPartition: expected digit in " + text);
      block.push_back(std::stoi(text.substr(i, j - i)) - 1);
      i = j;
    }
    if (i == text.size()) throw std::invalid_argument("SetPartition: unterminated block in " + text);
    ++i;  // '}'
    blocks.push_back(std::move(block));
  }
  return SetPartition(k, std::move(blocks));
}

int SetPartition::block_of(int element) const {
  for (int b = 0; b < block_count(); ++b)
    for (int e : blocks_[b])
      if (e == element) return b;
  throw std::out_of_range("SetPartition: element not in ground set");
}

std::vector<int> SetPartition::rgs() const {
  std::vector<int> out(k_, -1);
  for (int b = 0; b < block_count(); ++b)
    for (int e : blocks_[b]) out[e] = b;
  return out;
}

std::string SetPartition::str() const {
  std::string out;
  for (const auto& b : blocks_) {
    out += '{';
    for (size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i] + 1);
    }
    out += '}';
  }
  return out;
}

bool SetPartition::operator<(const SetPartition& o) const {
  if (k_ != o.k_) return k_ < o.k_;
  return rgs() < o.rgs();
}

PairPartition::PairPartition(int k, std::vector<std::pair<int, int>> pairs)
    : k_(k), pairs_(std::move(pairs)) {
  for (auto& [a, b] : pairs_)
    if (a > b) std::swap(a, b);
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<char> seen(k, 0);
  if (static_cast<int>(pairs_.size()) * 2 != k)
    throw std::invalid_argument("PairPartition: wrong number of pairs");
  for (auto& [a, b] : pairs_) {
    if (a < 0 || b >= k || a == b) throw std::invalid_argument("PairPartition: bad pair");
    if (seen[a] || seen[b]) throw std::invalid_argument("PairPartition: repeated element");
    seen[a] = seen[b] = 1;
  }
}

PairPartition PairPartition::from_set_partition(const SetPartition& p) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& b : p.blocks()) {
    if (b.size() != 2) throw std::invalid_argument("PairPartition: block of size != 2");
    pairs.emplace_back(b[0], b[1]);
  }
  return PairPartition(p.size(), std::move(pairs));
}

int PairPartition::partner(int element) const {
  for (const auto& [a, b] : pairs_) {
    if (a == element) return b;
    if (b == element) return a;
  }
  throw std::out_of_range("PairPartition: element not in ground set");
}

SetPartition PairPartition::as_set_partition() const {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(pairs_.size());
  for (const auto& [a, b] : pairs_) blocks.push_back({a, b});
  return SetPartition(k_, std::move(blocks));
}

IntervalPartition::IntervalPartition(std::vector<int> s) : sizes(std::move(s)) {
  for (int w : sizes)
    if (w <= 0) throw std::invalid_argument("IntervalPartition: nonpositive part");
}

int IntervalPartition::size() const {
  return std::accumulate(sizes.begin(), sizes.end(), 0);
}

SetPartition IntervalPartition::as_set_partition() const {
  std::vector<std::vector<int>> blocks;
  int at = 0;
  for (int w : sizes) {
    std::vector<int> b(w);
    std::iota(b.begin(), b.end(), at);
    at += w;
    blocks.push_back(std::move(b));
  }
  return SetPartition(at, std::move(blocks));
}

bool leq(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("leq: ground sets differ");
  std::vector<int> rb = b.rgs();
  for (const auto& block : a.blocks()) {
    int lab = rb[block.front()];
    for (int e : block)
      if (rb[e] != lab) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("join: ground sets differ");
  UnionFind uf(a.size());
  for (const auto& block : a.blocks())
    for (size_t i = 1; i < block.size(); ++i) uf.unite(block[0], block[i]);
  for (const auto& block : b.blocks())
    for (size_t i = 1; i < block.size(); ++i) uf.unite(block[0], block[i]);
  std::vector<int> labels(a.size());
  for (int e = 0; e < a.size(); ++e) labels[e] = uf.find(e);
  return SetPartition::from_labels(labels);
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("meet: ground sets differ");
  std::vector<int> ra = a.rgs(), rb = b.rgs();
  std::vector<int> labels(a.size());
  for (int e = 0; e < a.size(); ++e) labels[e] = ra[e] * (a.size() + 1) + rb[e];
  return SetPartition::from_labels(labels);
}

SetPartition kernel(const std::vector<int>& colors) {
  return SetPartition::from_labels(colors);
}

SetPartition restrict_to(const SetPartition& p, const std::vector<int>& subset) {
  std::vector<int> pos(p.size(), -1);
  for (size_t i = 0; i < subset.size(); ++i) {
    int e = subset[i];
    if (e < 0 || e >= p.size()) throw std::invalid_argument("restrict_to: element out of range");
    if (pos[e] >= 0) throw std::invalid_argument("restrict_to: repeated element");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("restrict_to: subset must be ascending");
    pos[e] = static_cast<int>(i);
  }
  std::vector<int> rg = p.rgs();
  std::vector<int> labels(subset.size());
  for (size_t i = 0; i < subset.size(); ++i) labels[i] = rg[subset[i]];
  return SetPartition::from_labels(labels);
}

long long mobius_to_top_blocks(int block_count) {
  if (block_count <= 0) throw std::invalid_argument("mobius: need at least one block");
  long long v = 1;
  for (int i = 1; i < block_count; ++i) v *= -i;
  return v;
}

long long mobius_to_top(const SetPartition& p) {
  return mobius_to_top_blocks(p.block_count());
}

int crossings(const PairPartition& m) {
  const auto& ps = m.pairs();
  int c = 0;
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j) {
      auto [a, b] = ps[i];
      auto [c2, d] = ps[j];
      if (a < c2 && c2 < b && b < d) ++c;
    }
  return c;
}

namespace {

void pair_rec(int k, std::vector<char>& used, std::vector<std::pair<int, int>>& acc,
              const std::function<void(const PairPartition&)>& fn) {
  int first = -1;
  for (int i = 0; i < k; ++i)
    if (!used[i]) { first = i; break; }
  if (first < 0) {
    fn(PairPartition(k, acc));
    return;
  }
  used[first] = 1;
  for (int j = first + 1; j < k; ++j) {
    if (used[j]) continue;
    used[j] = 1;
    acc.emplace_back(first, j);
    pair_rec(k, used, acc, fn);
    acc.pop_back();
    used[j] = 0;
  }
  used[first] = 0;
}

}  // namespace

void for_each_pair_partition(int k, const std::function<void(const PairPartition&)>& fn) {
  if (k < 0) throw std::invalid_argument("for_each_pair_partition: negative size");
  if (k % 2 != 0) return;
  if (k == 0) { fn(PairPartition(0, {})); return; }
  std::vector<char> used(k, 0);
  std::vector<std::pair<int, int>> acc;
  acc.reserve(k / 2);
  pair_rec(k, used, acc, fn);
}

std::vector<PairPartition> enumerate_pair_partitions(int k) {
  std::vector<PairPartition> out;
  for_each_pair_partition(k, [&](const PairPartition& p) { out.push_back(p); });
  return out;
}

void for_each_set_partition(int m, const std::function<void(const SetPartition&)>& fn) {
  if (m < 0) throw std::invalid_argument("for_each_set_partition: negative size");
  if (m == 0) { fn(SetPartition()); return; }
  std::vector<int> rgs(m, 0), maxv(m, 0);
  while (true) {
    fn(SetPartition::from_labels(rgs));
    int i = m - 1;
    for (; i > 0; --i) {
      if (rgs[i] <= maxv[i - 1]) break;
    }
    if (i == 0) return;
    ++rgs[i];
    maxv[i] = std::max(maxv[i - 1], rgs[i]);
    for (int j = i + 1; j < m; ++j) {
      rgs[j] = 0;
      maxv[j] = maxv[i];
    }
  }
}

std::vector<SetPartition> enumerate_set_partitions(int m) {
  std::vector<SetPartition> out;
  for_each_set_partition(m, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

}  // namespace sykq
