"""Explicit lower-bound colorings and the biased random chain sampler."""

from __future__ import annotations

import numpy as np

from .bounds import LLLParameters
from .coloring import ChainColoring
from .errors import ParameterError
from .lattice import chain_count_formula


def level_block_coloring(k: int, e_values) -> ChainColoring:
    """Color the levels of ``B_{sum e - 1}`` in consecutive blocks of sizes ``e_1..e_k``.

    This witnesses only the ``sum e_i`` part of the lower bound; whether each
    target fits in the host at all is a separate question.
    """
    e_values = tuple(e_values)
    if len(e_values) != k or k < 1:
        raise ParameterError("need one e-value per color")
    if any(e < 1 for e in e_values):
        raise ParameterError("e-values must be positive")
    levels = []
    for color, e in enumerate(e_values, start=1):
        levels += [color] * e
    return ChainColoring.by_levels(len(levels) - 1, k, levels)


def matching_lower_coloring(k: int, s: int) -> ChainColoring:
    """Level ``i`` gets color ``i`` on ``B_{k+1}``; the bottom joins color 1 and the top color ``k``."""
    if k < 2 or s < 2:
        raise ParameterError("need k >= 2 and s >= 2")
    levels = [1] + list(range(1, k + 1)) + [k]
    return ChainColoring.by_levels(k + 1, k, levels)


def diamond_lower_coloring(k: int, r: int) -> ChainColoring:
    """Levels ``2i-2`` and ``2i-1`` of ``B_{2k-1}`` get color ``i``."""
    if k < 1 or r < 2:
        raise ParameterError("need k >= 1 and r >= 2")
    return ChainColoring.by_levels(2 * k - 1, k, [i // 2 + 1 for i in range(2 * k)])


def lll_random_coloring(params: LLLParameters, host_n: int, seed) -> ChainColoring:
    """Color each t-chain of ``B_host_n`` independently with the biased distribution.

    Colors ``1..k-1`` each have probability ``p/(k-1)`` and color ``k`` has
    ``1-p`` where ``p = (n_k + t d + 2) ln(2^host_n) / m_k``.
    """
    if host_n < 0:
        raise ParameterError("host dimension must be non-negative")
    probs = np.array(params.probabilities(1 << host_n))
    rng = np.random.default_rng(seed)
    count = chain_count_formula(host_n, params.t)
    draws = rng.choice(params.k, size=count, p=probs / probs.sum()) + 1
    return ChainColoring(host_n, params.t, params.k, tuple(int(c) for c in draws))


def sample_good_coloring(instance, params: LLLParameters, host_n: int, seed, attempts: int):
    """Draw up to ``attempts`` colorings and return the first good one with its index."""
    from .search import verify_coloring

    rng = np.random.default_rng(seed)
    for i in range(attempts):
        coloring = lll_random_coloring(params, host_n, rng)
        if verify_coloring(instance, host_n, coloring).good:
            return coloring, i
    return None, attempts


__all__ = [
    "level_block_coloring", "matching_lower_coloring", "diamond_lower_coloring",
    "lll_random_coloring", "sample_good_coloring",
]
