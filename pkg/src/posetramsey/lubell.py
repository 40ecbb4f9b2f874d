"""Exact Lubell-function computations.

``lu_N(F)`` is the sum of ``1 / C(N, |S|)`` over ``S`` in ``F``, kept as a
``Fraction`` throughout.  ``max_lubell_P_free`` maximizes it over families
avoiding a weak copy of ``P`` and an excluded set ``Q``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from .embedding import copy_through, find_copy
from .errors import ParameterError
from .lattice import BooleanLattice, SubsetMask, TargetPoset, is_subset, iter_bits, orbit_representatives, popcount

EXACT, INCONCLUSIVE = "exact", "inconclusive"


def _masks(n: int, family) -> list[int]:
    out = []
    for s in family:
        bits = s.bits if isinstance(s, SubsetMask) else int(s)
        if bits < 0 or bits >> n:
            raise ParameterError(f"{bits} is not a subset of [{n}]")
        out.append(bits)
    return out


def lubell(n: int, family) -> Fraction:
    """``lu_N`` of a family of masks (duplicates count once)."""
    return sum((Fraction(1, comb(n, popcount(s))) for s in set(_masks(n, family))), Fraction(0))


def is_antichain(family) -> bool:
    fam = list(set(family))
    return not any(a != b and is_subset(a, b) for a in fam for b in fam)


def yblm_check(n: int, family) -> bool:
    """True iff ``family`` is an antichain and its Lubell value is at most 1."""
    fam = _masks(n, family)
    return is_antichain(fam) and lubell(n, fam) <= 1


def excluded_levels(n: int, levels) -> set[int]:
    """Every subset of ``[n]`` whose size is in ``levels``."""
    levels = set(levels)
    return {s for s in range(1 << n) if popcount(s) in levels}


# --- maximization ---------------------------------------------------------------

@dataclass(frozen=True)
class LubellMax:
    value: Fraction
    family: tuple[int, ...]
    status: str
    upper_bound: Fraction  # equals value when status is exact
    nodes: int

    @property
    def gap(self) -> Fraction:
        return self.upper_bound - self.value


def contains_weak_copy(lat: BooleanLattice, poset: TargetPoset, family_bits: int) -> bool:
    return find_copy(lat, poset, "weak", family_bits) is not None


class _BranchAndBound:
    def __init__(self, n, poset, excluded, node_budget, time_budget):
        self.lat = BooleanLattice(n)
        self.poset = poset
        self.weight = [Fraction(1, comb(n, popcount(s))) for s in range(1 << n)]
        # rarest sizes first, then by mask
        self.order = sorted((s for s in range(1 << n) if s not in excluded),
                            key=lambda s: (-self.weight[s], s))
        self.pos_bit = [0] * (1 << n)
        self.plans = {}
        self.pins = orbit_representatives(poset)
        self.node_budget, self.time_budget = node_budget, time_budget
        self.nodes = 0
        self.best = Fraction(0)
        self.best_family = 0
        self.open_bound = Fraction(0)
        self.cap = poset.size - 1
        # each maximal chain meets a P-free family in at most |P|-1 sets
        self.chains = self._maximal_chains(n) if self.cap < n + 1 else None

    @staticmethod
    def _maximal_chains(n):
        out = []
        for perm in permutations(range(n)):
            bits, s = 1, 0
            for i in perm:
                s |= 1 << i
                bits |= 1 << s
            out.append(bits)
        return out

    def _weight_of(self, bits):
        return sum((self.weight[s] for s in iter_bits(bits)), Fraction(0))

    def _chain_bound(self, bits):
        total = sum(min(self.cap, popcount(bits & c)) for c in self.chains)
        return Fraction(total, len(self.chains))

    def _addable(self, fam, candidates):
        keep = 0
        for s in iter_bits(candidates):
            if copy_through(self.lat, self.poset, False, fam | 1 << s, s, self.plans, self.pins) is None:
                keep |= 1 << s
        return keep

    def _bound(self, fam, value, addable):
        bound = value + self._weight_of(addable)
        if self.chains is not None and bound > self.best:
            bound = min(bound, self._chain_bound(fam | addable))
        return bound

    def run(self):
        self.start = time.perf_counter()
        addable = self._addable(0, sum(1 << s for s in self.order))
        try:
            self._dfs(0, 0, Fraction(0), addable)
            return EXACT
        except _Budget:
            return INCONCLUSIVE

    def _dfs(self, i, fam, value, addable):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            self.open_bound = max(self.open_bound, self._bound(fam, value, addable))
            raise _Budget
        if self.time_budget is not None and self.nodes & 255 == 0 \
                and time.perf_counter() - self.start > self.time_budget:
            self.open_bound = max(self.open_bound, self._bound(fam, value, addable))
            raise _Budget
        if value > self.best:
            self.best, self.best_family = value, fam
        order = self.order
        while i < len(order) and not addable >> order[i] & 1:
            i += 1
        if i == len(order):
            return
        if self._bound(fam, value, addable) <= self.best:
            return
        s = order[i]
        rest = addable & ~(1 << s)
        # include s: only sets still addable next to s survive
        new_fam = fam | 1 << s
        self._dfs(i + 1, new_fam, value + self.weight[s], self._addable(new_fam, rest))
        self._dfs(i + 1, fam, value, rest)


class _Budget(Exception):
    pass


def max_lubell_P_free(n: int, poset: TargetPoset, excluded=(), node_budget: int | None = None,
                      time_budget: float | None = None) -> LubellMax:
    """Largest ``lu_N`` of a weakly ``P``-free family in ``B_N`` minus ``excluded``.

    Branch and bound over sets in order of decreasing weight.  The bound at a
    node is the current value plus the weight of every undecided set that
    could still be added on its own, capped by the maximal-chain average
    (each maximal chain holds at most ``|P|-1`` sets of a ``P``-free family).
    """
    if n < 0:
        raise ParameterError("N must be non-negative")
    excluded = set(_masks(n, excluded))
    bb = _BranchAndBound(n, poset, excluded, node_budget, time_budget)
    status = bb.run()
    fam = tuple(iter_bits(bb.best_family))
    upper = bb.best if status == EXACT else max(bb.best, bb.open_bound)
    return LubellMax(bb.best, fam, status, upper, bb.nodes)


def _brute_contains(family: list[int], poset: TargetPoset, anchor: int) -> bool:
    """Is there an order-preserving injection of ``poset`` into ``family`` using ``anchor``?"""
    pairs = poset.strict_pairs()
    for img in permutations(family, poset.size):
        if anchor in img and all(is_subset(img[a], img[b]) for a, b in pairs):
            return True
    return False


def exhaustive_max_lubell(n: int, poset: TargetPoset, excluded=()) -> tuple[Fraction, tuple[int, ...]]:
    """Reference maximum by enumerating every ``P``-free family (``N <= 4``).

    Families are grown in mask order; a set is appended only if no copy of
    ``P`` uses it, checked by trying every injection.
    """
    if n > 4:
        raise ParameterError("the exhaustive reference is limited to N <= 4")
    excluded = set(_masks(n, excluded))
    pool = [s for s in range(1 << n) if s not in excluded]
    weight = {s: Fraction(1, comb(n, popcount(s))) for s in pool}
    best = (Fraction(0), ())

    def grow(start, fam, value):
        nonlocal best
        if value > best[0]:
            best = (value, tuple(fam))
        for j in range(start, len(pool)):
            s = pool[j]
            fam.append(s)
            if not _brute_contains(fam, poset, s):
                grow(j + 1, fam, value + weight[s])
            fam.pop()

    grow(0, [], Fraction(0))
    return best


# --- the Lubell criterion for upper bounds ----------------------------------------

def lemma34_value(n: int) -> Fraction:
    """``1 + 1/N``, the maximum for 2-matchings avoiding the bottom and top (``N >= 5``)."""
    if n < 5:
        raise ParameterError("the closed form holds for N >= 5")
    return 1 + Fraction(1, n)


def lemma35_upper(n: int, s: int) -> Fraction:
    """``1 + 4(s-1)/(N(N-1))`` for s-matchings avoiding levels 0, 1, N-1, N."""
    if s < 2 or n < 2:
        raise ParameterError("need s >= 2 and N >= 2")
    return 1 + Fraction(4 * (s - 1), n * (n - 1))


def lemma35_lower(n: int, s: int) -> Fraction:
    if s < 2 or n < 2:
        raise ParameterError("need s >= 2 and N >= 2")
    return 1 + Fraction(2 * (s - 1), n * (n - 1))


@dataclass(frozen=True)
class LubellCriterion:
    certified: bool
    lhs: Fraction  # k * L_N(P; Q)
    rhs: Fraction  # N + 1 - lu_N(Q)
    l_value: Fraction
    source: str

    @property
    def verdict(self) -> str:
        return "certified-upper" if self.certified else "condition-fails"


def ramsey_upper_by_lubell(poset: TargetPoset, k: int, n: int, excluded=(), source: str = "exact",
                           l_value: Fraction | None = None, s: int | None = None,
                           **search_kwargs) -> LubellCriterion:
    """Check ``k L_N(P; Q) < N + 1 - lu_N(Q)`` exactly; success bounds ``R_k(B|P) <= N``.

    ``source`` picks where ``L_N(P; Q)`` comes from: ``exact`` runs the
    branch and bound, ``lemma34`` / ``lemma35`` use the closed forms (the
    latter needs the matching size ``s``), ``given`` takes ``l_value``.
    """
    if k < 1:
        raise ParameterError("k must be positive")
    excluded = set(_masks(n, excluded))
    if source == "exact":
        res = max_lubell_P_free(n, poset, excluded, **search_kwargs)
        if res.status != EXACT:
            raise ParameterError("Lubell maximum is inconclusive within the budget")
        value = res.value
    elif source == "lemma34":
        value = lemma34_value(n)
    elif source == "lemma35":
        if s is None:
            raise ParameterError("lemma35 needs the matching size s")
        value = lemma35_upper(n, s)
    elif source == "given":
        if l_value is None:
            raise ParameterError("source 'given' needs l_value")
        value = Fraction(l_value)
    else:
        raise ParameterError(f"unknown source {source!r}")
    lhs = k * value
    rhs = n + 1 - lubell(n, excluded)
    return LubellCriterion(lhs < rhs, lhs, rhs, value, source)


def chain_average(n: int, family) -> Fraction:
    """Average of ``|F ∩ C|`` over the ``N!`` maximal chains (equals ``lu_N``)."""
    fam = set(_masks(n, family))
    total = 0
    for perm in permutations(range(n)):
        s = 0
        hits = 1 if 0 in fam else 0
        for i in perm:
            s |= 1 << i
            hits += s in fam
        total += hits
    return Fraction(total, factorial(n))


__all__ = [
    "lubell", "is_antichain", "yblm_check", "excluded_levels", "LubellMax", "max_lubell_P_free",
    "exhaustive_max_lubell", "contains_weak_copy", "lemma34_value", "lemma35_upper", "lemma35_lower",
    "LubellCriterion", "ramsey_upper_by_lubell", "chain_average", "EXACT", "INCONCLUSIVE",
]
