#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "sykq/qmoments.hpp"

using namespace sykq;

namespace {

long long catalan(int m) {
  long long c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

long long double_factorial_odd(int k) {
  long long r = 1;
  for (int v = k - 1; v > 0; v -= 2) r *= v;
  return r;
}

}  // namespace

TEST_CASE("model parameters") {
  CHECK_THROWS(FiniteModel(7, 2));
  CHECK_THROWS(FiniteModel(8, 0));
  CHECK_THROWS(FiniteModel(8, 5));
  CHECK(FiniteModel(8, 2).index_count() == 28);
  CHECK(FiniteModel(8, 2).sites() == 4);

  auto even = q_from_lambda(0.5, true);
  CHECK(even.q == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  auto odd = q_from_lambda(0.5, false);
  CHECK(odd.q == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
  CHECK(q_from_lambda(0.0, true).q == 1.0);
  CHECK(q_from_lambda(0.0, false).q == -1.0);

  CHECK(q_from_model(FiniteModel(8, 2)).lambda == doctest::Approx(0.5));
  CHECK(q_from_model(FiniteModel(8, 2)).q == doctest::Approx(std::exp(-1.0)));
  CHECK(q_from_model(FiniteModel(18, 3)).q == doctest::Approx(-std::exp(-1.0)));
  CHECK(q_from_model(FiniteModel(32, 4)).q == doctest::Approx(std::exp(-1.0)));

  CHECK(qpow(0.0, 0) == 1.0);
  CHECK(qpow(0.0, 2) == 0.0);
  CHECK(qpow(-0.5, 3) == doctest::Approx(-0.125));
}

TEST_CASE("pairing-weighted moments") {
  for (double q : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
    CHECK(q_wick_moment({}, q) == 1.0);
    CHECK(q_wick_moment({1, 1}, q) == 1.0);
    CHECK(q_wick_moment({1, 2}, q) == 0.0);
    CHECK(q_wick_moment({1, 1, 1}, q) == 0.0);
    CHECK(q_wick_moment({1, 1, 1, 1, 1}, q) == 0.0);
    CHECK(q_wick_moment({1, 1, 1, 1}, q) == doctest::Approx(2.0 + q).epsilon(1e-14));
    CHECK(q_wick_moment({1, 2, 1, 2}, q) == doctest::Approx(q).epsilon(1e-14));
    CHECK(q_wick_moment({1, 1, 2, 2}, q) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q_wick_moment({1, 2, 2, 1}, q) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q_wick_moment({1, 1, 1, 1, 1, 1}, q) ==
          doctest::Approx(5 + 6 * q + 3 * q * q + q * q * q).epsilon(1e-13));
  }
}

TEST_CASE("limit moments at the classical points") {
  for (int k = 2; k <= 12; k += 2) {
    std::vector<int> eps(k, 1);
    CHECK(q_wick_moment(eps, 1.0) == doctest::Approx(double_factorial_odd(k)).epsilon(1e-12));
    CHECK(q_wick_moment(eps, -1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q_wick_moment(eps, 0.0) == doctest::Approx(catalan(k / 2)).epsilon(1e-12));
  }
}

TEST_CASE("brownian pairing moments") {
  for (double q : {-0.5, 0.0, 0.7}) {
    CHECK(q_brownian_moment({0.7, 0.7}, q) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(q_brownian_moment({1, 1, 1, 1}, q) == doctest::Approx(2.0 + q).epsilon(1e-14));
    double s = 0.5, t = 1.0;
    CHECK(q_brownian_moment({s, t, s, t}, q) ==
          doctest::Approx(2 * s * s + q * s * t).epsilon(1e-14));
    CHECK(q_brownian_moment({s, t, t, s}, q) ==
          doctest::Approx(s * s + s * t + q * s * s).epsilon(1e-14));
    CHECK(q_brownian_moment({0.3, 0.9, 0.4}, q) == 0.0);
    CHECK(q_brownian_moment({0.0, 1.0, 0.0, 1.0}, q) == 0.0);
  }
  CHECK(q_brownian_moment({0.5, 1, 0.5, 1}, std::exp(-1.0)) ==
        doctest::Approx(0.5 + 0.5 * std::exp(-1.0)).epsilon(1e-14));
  CHECK_THROWS(q_brownian_moment({-0.5, 1}, 0.0));
}

TEST_CASE("fluctuation spec") {
  FluctuationSpec spec({2, 2}, {1, 1, 2, 2});
  CHECK(spec.order() == 2);
  CHECK(spec.total() == 4);
  CHECK(spec.theta().as_set_partition().str() == "{1,2}{3,4}");
  CHECK(spec.words() == std::vector<std::vector<int>>{{1, 1}, {2, 2}});
  CHECK_THROWS(FluctuationSpec({2, 0}, {1, 1}));
  CHECK_THROWS(FluctuationSpec({2, 2}, {1, 1, 2}));
}

TEST_CASE("fluctuation limit values") {
  for (double q : {-0.5, 0.0, 0.7}) {
    CHECK(fluctuation_limit(FluctuationSpec({2, 2}, {1, 1, 1, 1}), q) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fluctuation_limit(FluctuationSpec({2, 2}, {1, 1, 2, 2}), q) == 0.0);
    CHECK(fluctuation_limit(FluctuationSpec({2, 2, 2}, {1, 1, 1, 1, 1, 1}), q) ==
          doctest::Approx(8.0).epsilon(1e-14));
    // m = 1 reduces to the plain moment
    CHECK(fluctuation_limit(FluctuationSpec({4}, {1, 1, 1, 1}), q) ==
          doctest::Approx(2.0 + q).epsilon(1e-14));
  }
}

TEST_CASE("trace sign closed form matches string algebra") {
  std::mt19937 gen(23);
  for (int q_n : {2, 3}) {
    FiniteModel model(8, q_n);
    MajoranaRep rep = model.rep();
    std::uniform_int_distribution<std::uint64_t> pick(0, model.index_count() - 1);
    for (int k : {2, 4, 6}) {
      for_each_pair_partition(k, [&](const PairPartition& pi) {
        for (int trial = 0; trial < 25; ++trial) {
          std::vector<MultiIndex> values;
          for (int b = 0; b < k / 2; ++b)
            values.push_back(MultiIndex::from_rank(8, q_n, pick(gen)));
          std::vector<MultiIndex> word;
          for (int i = 0; i < k; ++i) {
            int block = -1;
            const auto& ps = pi.pairs();
            for (int b = 0; b < k / 2; ++b)
              if (ps[b].first == i || ps[b].second == i) block = b;
            word.push_back(values[block]);
          }
          CHECK(trace_word(word, rep) == pairing_trace_sign(pi, values, q_n));
        }
      });
    }
  }
  // crossing pair with known overlap
  PairPartition cross(4, {{0, 2}, {1, 3}});
  std::vector<MultiIndex> qr = {MultiIndex(8, {1, 2}), MultiIndex(8, {2, 3})};
  CHECK(pairing_trace_sign(cross, qr, 2) == -1);
  std::vector<MultiIndex> disj = {MultiIndex(8, {1, 2}), MultiIndex(8, {3, 4})};
  CHECK(pairing_trace_sign(cross, disj, 2) == 1);
  PairPartition nest(4, {{0, 3}, {1, 2}});
  CHECK(pairing_trace_sign(nest, qr, 2) == 1);
}

TEST_CASE("pairing sums over the index set") {
  PairPartition cross(4, {{0, 2}, {1, 3}});
  PairPartition nc(4, {{0, 1}, {2, 3}});
  PairPartition nest(4, {{0, 3}, {1, 2}});

  FiniteModel m82(8, 2);
  CHECK(s_pi(nc, m82) == Rational(1));
  CHECK(s_pi(nest, m82) == Rational(1));
  CHECK(s_pi(cross, m82) == Rational(1, 7));
  CHECK(s_pi(cross, FiniteModel(6, 2)) == Rational(-1, 15));
  CHECK(s_pi(cross, FiniteModel(18, 3)) == Rational(-23, 102));

  // split-independence of the threaded partial sums
  EvalBudget two_threads{1'000'000'000, 3};
  CHECK(s_pi(cross, FiniteModel(18, 3), two_threads) == Rational(-23, 102));

  CHECK(pairwise_sign_expectation(m82) == Rational(1, 7));
  CHECK(pairwise_sign_expectation(FiniteModel(6, 2)) == Rational(-1, 15));
  CHECK(pairwise_sign_expectation(FiniteModel(18, 3)) == Rational(23, 102));
  CHECK(pairwise_sign_expectation(FiniteModel(32, 4)) == Rational(1191, 4495));

  // for the single-crossing pairing the sum is the signed pairwise expectation
  for (auto model : {FiniteModel(8, 2), FiniteModel(10, 4), FiniteModel(18, 3)}) {
    Rational expect = pairwise_sign_expectation(model);
    if (model.q_n % 2 != 0) expect = -expect;
    CHECK(s_pi(cross, model) == expect);
  }
}

TEST_CASE("budget guard") {
  PairPartition cross(4, {{0, 2}, {1, 3}});
  FiniteModel m82(8, 2);
  CHECK_THROWS_AS(s_pi(cross, m82, EvalBudget{783, 1}), BudgetExceeded);
  try {
    s_pi(cross, m82, EvalBudget{10, 1});
  } catch (const BudgetExceeded& e) {
    CHECK(e.required == 784);
    CHECK(e.limit == 10);
  }
  CHECK(s_pi(cross, m82, EvalBudget{784, 1}) == Rational(1, 7));
}

TEST_CASE("pinned block sums are pin independent") {
  PairPartition cross(4, {{0, 2}, {1, 3}});
  FiniteModel m82(8, 2);
  Rational want = s_pi(cross, m82);
  for (int block : {0, 1}) {
    for (std::uint64_t r : {std::uint64_t{0}, std::uint64_t{13}, std::uint64_t{27}}) {
      CHECK(s_pi_restricted(cross, block, MultiIndex::from_rank(8, 2, r), m82) == want);
    }
  }
  CHECK_THROWS(s_pi_restricted(cross, 2, MultiIndex::from_rank(8, 2, 0), m82));
  CHECK_THROWS(s_pi_restricted(cross, 0, MultiIndex::from_rank(10, 2, 0), m82));
}

TEST_CASE("exact moments for gaussian couplings") {
  FiniteModel m82(8, 2);
  CHECK(exact_finite_n_moment({1, 1}, m82) == Rational(1));
  CHECK(exact_finite_n_moment({1, 2}, m82) == Rational(0));
  CHECK(exact_finite_n_moment({1, 1, 1}, m82) == Rational(0));
  CHECK(exact_finite_n_moment({1, 1, 1, 1, 1}, m82) == Rational(0));
  CHECK(exact_finite_n_moment({1, 1, 1, 1}, m82) == Rational(15, 7));
  CHECK(exact_finite_n_moment({1, 1, 1, 1, 1, 1}, m82) == Rational(285, 49));
  CHECK(exact_finite_n_moment({1, 1, 2, 2}, m82) == Rational(1));

  // the alternating two-color word keeps only the crossing pairing
  PairPartition cross(4, {{0, 2}, {1, 3}});
  for (auto model : {FiniteModel(8, 2), FiniteModel(8, 3), FiniteModel(6, 2)}) {
    CHECK(exact_finite_n_moment({1, 2, 1, 2}, model) == s_pi(cross, model));
  }

  // moment equals the pairing sum at k = 4 for several models
  for (auto model : {FiniteModel(6, 2), FiniteModel(8, 2), FiniteModel(8, 3), FiniteModel(10, 4)}) {
    Rational total = s_pi(PairPartition(4, {{0, 1}, {2, 3}}), model) +
                     s_pi(cross, model) +
                     s_pi(PairPartition(4, {{0, 3}, {1, 2}}), model);
    CHECK(exact_finite_n_moment({1, 1, 1, 1}, model) == total);
  }
}

TEST_CASE("exact joint trace moments") {
  FiniteModel m82(8, 2);
  CHECK(exact_mixed_trace_moment(m82, {{1, 1}, {1, 1}}) == Rational(15, 14));
  CHECK(exact_mixed_trace_moment(m82, {{1}, {1}}) == Rational(0));
  CHECK(exact_mixed_trace_moment(m82, {{1, 1}}) == Rational(1));
  CHECK(exact_mixed_trace_moment(m82, {{1, 1}, {2, 2}}) == Rational(1));
}

TEST_CASE("exact scaled fluctuations") {
  FluctuationSpec same({2, 2}, {1, 1, 1, 1});
  FluctuationSpec split({2, 2}, {1, 1, 2, 2});
  FluctuationSpec triple({2, 2, 2}, {1, 1, 1, 1, 1, 1});
  for (auto model : {FiniteModel(8, 2), FiniteModel(6, 3)}) {
    CHECK(exact_finite_n_fluctuation(same, model) == Rational(2));
    CHECK(exact_finite_n_fluctuation(split, model) == Rational(0));
    CHECK(exact_finite_n_fluctuation(triple, model) == Rational(8));
  }
}

TEST_CASE("exact process moments") {
  FiniteModel m82(8, 2);
  CHECK(exact_process_moment({0.7, 0.7}, m82) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(exact_process_moment({1, 1, 1, 1}, m82) ==
        doctest::Approx(15.0 / 7.0).epsilon(1e-13));
  CHECK(exact_process_moment({0.5, 1, 0.5, 1}, m82) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-13));
  CHECK(exact_process_moment({0.3, 0.9, 0.4}, m82) == 0.0);
}

TEST_CASE("cumulants by moebius inversion") {
  auto constant_moment = [](const std::vector<int>& s) {
    double p = 1;
    for (int i : s) p *= (i + 2.0);
    return p;
  };
  CHECK(classical_cumulant(1, constant_moment) == doctest::Approx(2.0));
  CHECK(classical_cumulant(2, constant_moment) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(classical_cumulant(3, constant_moment) == doctest::Approx(0.0).epsilon(1e-12));

  // single variable with factorial moments: cumulants (m-1)!
  auto factorial_moment = [](const std::vector<int>& s) {
    double f = 1;
    for (size_t i = 2; i <= s.size(); ++i) f *= static_cast<double>(i);
    return f;
  };
  CHECK(classical_cumulant(1, factorial_moment) == doctest::Approx(1.0));
  CHECK(classical_cumulant(2, factorial_moment) == doctest::Approx(1.0));
  CHECK(classical_cumulant(3, factorial_moment) == doctest::Approx(2.0));
  CHECK(classical_cumulant(4, factorial_moment) == doctest::Approx(6.0));
}
