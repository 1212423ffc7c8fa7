import cmath
import math
from fractions import Fraction

import sykq


def test_pairings_and_crossings():
    pairings = sykq.pair_partitions(4)
    assert pairings == ["{1,2}{3,4}", "{1,3}{2,4}", "{1,4}{2,3}"]
    assert [sykq.crossings(p) for p in pairings] == [0, 1, 0]
    assert len(sykq.pair_partitions(8)) == 105
    assert len(sykq.set_partitions(4)) == 15


def test_string_algebra():
    assert sykq.index_count(8, 2) == 28
    assert sykq.majorana_string(8, [1, 3]).startswith("i^")
    assert sykq.commutation_sign(8, [1, 2], [1, 3]) in (-1, 1)
    assert sykq.trace_word(8, [[1, 2], [1, 2]]) == 1
    assert sykq.trace_word(8, [[1, 2], [3, 4]]) == 0


def test_exact_oracles():
    assert sykq.exact_moment([1, 1, 1, 1], 8, 2) == Fraction(15, 7)
    assert sykq.s_pi("{1,3}{2,4}", 8, 2) == Fraction(1, 7)
    assert sykq.pairwise_sign_expectation(8, 2) == Fraction(1, 7)
    assert sykq.exact_fluctuation([2, 2], [1, 1, 1, 1], 8, 2) == 2
    assert math.isclose(sykq.exact_process_moment([0.5, 1, 0.5, 1], 8, 2), 4 / 7)


def test_limit_laws():
    lam, q = sykq.q_from_model(8, 2)
    assert math.isclose(lam, 0.5)
    assert math.isclose(q, math.exp(-1))
    assert sykq.q_wick_moment([1] * 4, 0.0) == 2.0
    assert math.isclose(sykq.q_brownian_moment([0.5, 1, 0.5, 1], q), 0.5 + 0.5 * q)
    assert sykq.fluctuation_limit([2, 2], [1, 1, 1, 1], q) == 2.0
    assert sykq.fluctuation_limit([2, 2], [1, 1, 2, 2], q) == 0.0


def test_monte_carlo_agrees_with_oracle():
    est = sykq.mc_moment([1, 1, 1, 1], 8, 2, n_samples=4000, seed=7)
    assert est["n_samples"] == 4000
    assert est["std_error"] > 0
    assert abs(est["value"] - 15 / 7) < 5 * est["std_error"]

    rerun = sykq.mc_moment([1, 1, 1, 1], 8, 2, n_samples=4000, seed=7)
    assert rerun == est


def test_fock_and_transform():
    w = [1, 2, 1, 2]
    assert math.isclose(sykq.vacuum_moment(w, 0.5), sykq.q_wick_moment(w, 0.5), abs_tol=1e-10)
    assert math.isclose(sykq.q_inner([1, 1, 1], [1, 1, 1], 0.5), 1 + 2 * 0.5 + 2 * 0.25 + 0.125)

    z = 1 + 1j
    assert cmath.isclose(sykq.cauchy_transform(z, 0.0), sykq.semicircle_cauchy(z), abs_tol=1e-9)
    moments = sykq.cauchy_series_moments(0.0, 6)
    assert [round(v) for v in moments] == [1, 0, 1, 0, 2, 0, 5]
