#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sykq/partitions.hpp"

using namespace sykq;

namespace {

// definition-based crossing count: pairs (a,b),(c,d) with a < c < b < d
int crossings_by_definition(const PairPartition& m) {
  const auto& ps = m.pairs();
  int c = 0;
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = 0; j < ps.size(); ++j) {
      if (i == j) continue;
      if (ps[i].first < ps[j].first && ps[j].first < ps[i].second &&
          ps[i].second < ps[j].second)
        ++c;
    }
  return c;
}

long long double_factorial_odd(int m) {  // (m-1)!! for even m
  long long r = 1;
  for (int v = m - 1; v > 0; v -= 2) r *= v;
  return r;
}

}  // namespace

TEST_CASE("set partition canonical form") {
  SetPartition p(4, {{2, 0}, {3, 1}});
  CHECK(p.str() == "{1,3}{2,4}");
  CHECK(p.block_count() == 2);
  CHECK(p.block_of(0) == 0);
  CHECK(p.block_of(1) == 1);
  CHECK(p.block_of(3) == 1);
  CHECK(p.rgs() == std::vector<int>{0, 1, 0, 1});

  CHECK(SetPartition::full(3).str() == "{1,2,3}");
  CHECK(SetPartition::singletons(3).str() == "{1}{2}{3}");
  CHECK(SetPartition::full(0).block_count() == 0);

  CHECK_THROWS(SetPartition(4, {{0, 1}, {1, 2, 3}}));  // overlap
  CHECK_THROWS(SetPartition(4, {{0, 1}}));             // missing elements
  CHECK_THROWS(SetPartition(4, {{0, 1}, {2, 4}}));     // out of range
}

TEST_CASE("set partition from labels and text") {
  CHECK(SetPartition::from_labels({7, 7, 3, 3}).str() == "{1,2}{3,4}");
  CHECK(SetPartition::from_labels({5, 1, 5, 1}) == SetPartition(4, {{0, 2}, {1, 3}}));

  auto p = SetPartition::from_string(6, "{1,4}{2,5}{3,6}");
  CHECK(p.rgs() == std::vector<int>{0, 1, 2, 0, 1, 2});
  CHECK(SetPartition::from_string(6, p.str()) == p);
  CHECK(SetPartition::from_string(4, " {1, 3} {2, 4} ").str() == "{1,3}{2,4}");
  CHECK_THROWS(SetPartition::from_string(4, "{1,2}{3}"));
  CHECK_THROWS(SetPartition::from_string(4, "{1,2}{2,3,4}"));
  CHECK_THROWS(SetPartition::from_string(4, "{0,1}{2,3}"));
  CHECK_THROWS(SetPartition::from_string(4, "nonsense"));
}

TEST_CASE("lattice order join meet") {
  auto all4 = enumerate_set_partitions(4);
  CHECK(all4.size() == 15);

  auto top = SetPartition::full(4);
  auto bot = SetPartition::singletons(4);
  for (const auto& a : all4) {
    CHECK(leq(a, a));
    CHECK(leq(a, top));
    CHECK(leq(bot, a));
    CHECK(join(a, bot) == a);
    CHECK(meet(a, top) == a);
    CHECK(join(a, top) == top);
    CHECK(meet(a, bot) == bot);
    for (const auto& b : all4) {
      auto j = join(a, b);
      auto m = meet(a, b);
      CHECK(j == join(b, a));
      CHECK(m == meet(b, a));
      CHECK(leq(a, j));
      CHECK(leq(b, j));
      CHECK(leq(m, a));
      CHECK(leq(m, b));
      CHECK((leq(a, b) == (join(a, b) == b)));
      CHECK((leq(a, b) == (meet(a, b) == a)));
    }
  }

  SetPartition a(5, {{0, 1}, {2, 3}, {4}});
  SetPartition b(5, {{1, 2}, {0}, {3}, {4}});
  CHECK(join(a, b).str() == "{1,2,3,4}{5}");
  CHECK(meet(a, b) == SetPartition::singletons(5));
}

TEST_CASE("kernel and restriction") {
  CHECK(kernel({1, 1, 2, 2}).str() == "{1,2}{3,4}");
  CHECK(kernel({3, 1, 3, 1}).str() == "{1,3}{2,4}");
  CHECK(kernel({1, 1, 1, 1}) == SetPartition::full(4));
  CHECK(kernel({1, 2, 3}) == SetPartition::singletons(3));

  SetPartition p(6, {{0, 2, 4}, {1, 3}, {5}});
  CHECK(restrict_to(p, {0, 2, 3, 5}).str() == "{1,2}{3}{4}");
  CHECK(restrict_to(p, {1, 3}) == SetPartition::full(2));
}

TEST_CASE("mobius function to the top") {
  CHECK(mobius_to_top_blocks(1) == 1);
  CHECK(mobius_to_top_blocks(2) == -1);
  CHECK(mobius_to_top_blocks(3) == 2);
  CHECK(mobius_to_top_blocks(4) == -6);
  CHECK(mobius_to_top_blocks(5) == 24);
  CHECK(mobius_to_top(SetPartition::full(4)) == 1);
  CHECK(mobius_to_top(SetPartition::singletons(4)) == -6);

  // sum over the interval [sigma, 1] vanishes for m >= 2
  for (int m = 2; m <= 5; ++m) {
    long long total = 0;
    for_each_set_partition(m, [&](const SetPartition& s) { total += mobius_to_top(s); });
    CHECK(total == 0);
  }
}

TEST_CASE("pair partition structure") {
  PairPartition m(4, {{2, 0}, {1, 3}});
  CHECK(m.pairs() == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  CHECK(m.partner(0) == 2);
  CHECK(m.partner(3) == 1);
  CHECK(m.str() == "{1,3}{2,4}");
  CHECK(PairPartition::from_set_partition(m.as_set_partition()) == m);

  CHECK_THROWS(PairPartition(4, {{0, 1}}));
  CHECK_THROWS(PairPartition(4, {{0, 1}, {1, 2}}));
  CHECK_THROWS(PairPartition::from_set_partition(SetPartition::full(4)));
  CHECK_THROWS(PairPartition(3, {{0, 1}, {2, 2}}));
}

TEST_CASE("interval partition") {
  IntervalPartition w({2, 3, 1});
  CHECK(w.size() == 6);
  CHECK(w.block_count() == 3);
  CHECK(w.as_set_partition().str() == "{1,2}{3,4,5}{6}");
  CHECK_THROWS(IntervalPartition({2, 0}));
}

TEST_CASE("crossing numbers") {
  CHECK(crossings(PairPartition(4, {{0, 1}, {2, 3}})) == 0);
  CHECK(crossings(PairPartition(4, {{0, 2}, {1, 3}})) == 1);
  CHECK(crossings(PairPartition(4, {{0, 3}, {1, 2}})) == 0);
  CHECK(crossings(PairPartition(6, {{0, 3}, {1, 4}, {2, 5}})) == 3);
  CHECK(crossings(PairPartition(6, {{0, 5}, {1, 3}, {2, 4}})) == 1);

  for (int k = 2; k <= 10; k += 2) {
    for_each_pair_partition(k, [&](const PairPartition& pi) {
      CHECK(crossings(pi) == crossings_by_definition(pi));
    });
  }

  // crossing histogram over P2(6): 5 noncrossing, then 6, 3, 1
  std::map<int, int> hist;
  for_each_pair_partition(6, [&](const PairPartition& pi) { hist[crossings(pi)]++; });
  CHECK(hist == std::map<int, int>{{0, 5}, {1, 6}, {2, 3}, {3, 1}});
}

TEST_CASE("pair partition enumeration") {
  for (int k = 0; k <= 12; k += 2) {
    long long count = 0;
    std::set<std::vector<std::pair<int, int>>> seen;
    for_each_pair_partition(k, [&](const PairPartition& pi) {
      ++count;
      seen.insert(pi.pairs());
    });
    CHECK(count == double_factorial_odd(k));
    CHECK(static_cast<long long>(seen.size()) == count);
  }
  CHECK(enumerate_pair_partitions(3).empty());

  auto p4 = enumerate_pair_partitions(4);
  REQUIRE(p4.size() == 3);
  CHECK(p4[0].str() == "{1,2}{3,4}");
  CHECK(p4[1].str() == "{1,3}{2,4}");
  CHECK(p4[2].str() == "{1,4}{2,3}");
}

TEST_CASE("set partition enumeration") {
  const long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int m = 1; m <= 8; ++m) {
    long long count = 0;
    std::set<std::string> seen;
    for_each_set_partition(m, [&](const SetPartition& s) {
      ++count;
      seen.insert(s.str());
      CHECK(s.size() == m);
    });
    CHECK(count == bell[m]);
    CHECK(static_cast<long long>(seen.size()) == count);
  }

  auto all3 = enumerate_set_partitions(3);
  REQUIRE(all3.size() == 5);
  CHECK(all3.front() == SetPartition::full(3));
  CHECK(all3.back() == SetPartition::singletons(3));
  CHECK(std::is_sorted(all3.begin(), all3.end(),
                       [](const SetPartition& a, const SetPartition& b) { return a < b; }));
}
