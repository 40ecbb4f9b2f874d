"""Colorings of the t-chains of a Boolean lattice."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError
from .lattice import chain_count_formula, chain_index, enumerate_t_chains, popcount


@lru_cache(maxsize=32)
def chains_of(n: int, t: int) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_t_chains(n, t))


@lru_cache(maxsize=32)
def chain_ids(n: int, t: int) -> dict[tuple[int, ...], int]:
    return chain_index(chains_of(n, t))


@dataclass(frozen=True)
class ChainColoring:
    """Colors ``1..k`` indexed by canonical t-chain id of ``B_host_n``.

    For ``t == 1`` the ids are the element masks themselves.
    """

    host_n: int
    t: int
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1 or self.t < 1 or self.host_n < 0:
            raise ParameterError("need k >= 1, t >= 1, host_n >= 0")
        expected = chain_count_formula(self.host_n, self.t)
        if len(self.colors) != expected:
            raise ParameterError(
                f"coloring has {len(self.colors)} entries, B_{self.host_n} has {expected} {self.t}-chains")
        if self.colors and (min(self.colors) < 1 or max(self.colors) > self.k):
            raise ParameterError(f"colors must lie in 1..{self.k}")

    @classmethod
    def from_function(cls, host_n: int, k: int, fn, t: int = 1) -> "ChainColoring":
        """Color each chain (a mask for t=1, a mask tuple otherwise) by ``fn``."""
        if t == 1:
            return cls(host_n, 1, k, tuple(fn(s) for s in range(1 << host_n)))
        return cls(host_n, t, k, tuple(fn(c) for c in chains_of(host_n, t)))

    @classmethod
    def by_levels(cls, host_n: int, k: int, level_colors) -> "ChainColoring":
        """Element coloring where level ``i`` gets ``level_colors[i]``."""
        return cls(host_n, 1, k, tuple(level_colors[popcount(s)] for s in range(1 << host_n)))

    def color(self, chain) -> int:
        if self.t == 1 and isinstance(chain, int):
            return self.colors[chain]
        return self.colors[chain_ids(self.host_n, self.t)[tuple(chain)]]

    def class_bits(self, color: int) -> int:
        """Bitset of the chain ids carrying ``color``."""
        bits = 0
        for i, c in enumerate(self.colors):
            if c == color:
                bits |= 1 << i
        return bits

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def recolor(self, chain_id: int, color: int) -> "ChainColoring":
        colors = list(self.colors)
        colors[chain_id] = color
        return ChainColoring(self.host_n, self.t, self.k, tuple(colors))
