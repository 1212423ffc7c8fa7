"""Sparse random-coupling model: exact oracles, Monte Carlo, q-deformed limits."""

from ._sykq import (
    cauchy_series_moments,
    cauchy_transform,
    commutation_sign,
    crossings,
    exact_fluctuation,
    exact_moment,
    exact_process_moment,
    fluctuation_limit,
    index_count,
    majorana_string,
    mc_fluctuation,
    mc_moment,
    mc_process_moment,
    pair_partitions,
    pairwise_sign_expectation,
    q_brownian_moment,
    q_from_model,
    q_inner,
    q_wick_moment,
    s_pi,
    selftest,
    semicircle_cauchy,
    set_partitions,
    trace_word,
    vacuum_moment,
)

__version__ = "0.1.0"

__all__ = [
    "cauchy_series_moments",
    "cauchy_transform",
    "commutation_sign",
    "crossings",
    "exact_fluctuation",
    "exact_moment",
    "exact_process_moment",
    "fluctuation_limit",
    "index_count",
    "majorana_string",
    "mc_fluctuation",
    "mc_moment",
    "mc_process_moment",
    "pair_partitions",
    "pairwise_sign_expectation",
    "q_brownian_moment",
    "q_from_model",
    "q_inner",
    "q_wick_moment",
    "s_pi",
    "selftest",
    "semicircle_cauchy",
    "set_partitions",
    "trace_word",
    "vacuum_moment",
]
