"""Weak and strong copies of small posets inside Boolean lattices.

The workhorse is a backtracking search over bitsets: the candidate images
of a target element are the intersection of the up/down sets of the images
already placed (and, for strong copies, of their incomparability sets).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator, Sequence

import numpy as np

from .coloring import ChainColoring, chain_ids, chains_of
from .errors import InfeasibleSizeError, ParameterError
from .lattice import BooleanLattice, TargetPoset, boolean_poset, is_subset

MODES = ("weak", "strong")

_UP, _DOWN, _APART = 0, 1, 2


def _lattice(host) -> BooleanLattice:
    return host if isinstance(host, BooleanLattice) else BooleanLattice(host)


def _check_mode(mode: str) -> bool:
    if mode not in MODES:
        raise ParameterError(f"mode must be 'weak' or 'strong', got {mode!r}")
    return mode == "strong"


@dataclass(frozen=True)
class Embedding:
    target: TargetPoset
    images: tuple[int, ...]
    mode: str

    def __post_init__(self):
        if len(self.images) != self.target.size:
            raise ParameterError("one image per target element required")

    def is_valid(self) -> bool:
        return is_embedding(self.target, self.images, self.mode)


def is_embedding(poset: TargetPoset, images: Sequence[int], mode: str) -> bool:
    """Pairwise check of injectivity and order (weak) or order-iff (strong)."""
    strong = _check_mode(mode)
    if len(images) != poset.size or len(set(images)) != len(images):
        return False
    for a in range(poset.size):
        for b in range(poset.size):
            if a == b:
                continue
            inside = is_subset(images[a], images[b])
            if poset.leq[a][b] and not inside:
                return False
            if strong and inside and not poset.leq[a][b]:
                return False
    return True


def search_order(poset: TargetPoset, pinned: Sequence[int] = (), linear: bool = True) -> list[int]:
    """Greedy most-constrained-first placement order.

    Pinned elements come first.  Among the rest, prefer the element with the
    most comparabilities to already placed ones, then the largest total
    number of comparabilities, then the lowest index.  With ``linear`` (and
    nothing pinned) only elements whose predecessors are all placed are
    eligible, so the order is a linear extension.
    """
    size = poset.size
    degree = [sum(poset.comparable(a, b) for b in range(size) if b != a) for a in range(size)]
    order = list(pinned)
    placed = set(order)
    linear = linear and not pinned
    while len(order) < size:
        best, best_key = -1, None
        for a in range(size):
            if a in placed:
                continue
            if linear and any(poset.leq[b][a] and b not in placed for b in range(size) if b != a):
                continue
            key = (sum(poset.comparable(a, b) for b in placed), degree[a], -a)
            if best_key is None or key > best_key:
                best, best_key = a, key
        order.append(best)
        placed.add(best)
    return order


class _Plan:
    """Precomputed constraint lists for one placement order."""

    __slots__ = ("order", "constraints", "completing")

    def __init__(self, poset: TargetPoset, order: Sequence[int], strong: bool,
                 chains: Sequence[tuple[int, ...]] = ()):
        self.order = list(order)
        pos = {p: i for i, p in enumerate(order)}
        self.constraints = []
        for i, p in enumerate(order):
            cons = []
            for q in order[:i]:
                if poset.leq[q][p]:
                    cons.append((q, _UP))
                elif poset.leq[p][q]:
                    cons.append((q, _DOWN))
                elif strong:
                    cons.append((q, _APART))
            self.constraints.append(cons)
        self.completing = [[] for _ in order]
        for ch in chains:
            self.completing[max(pos[a] for a in ch)].append(ch)


def _backtrack(lat: BooleanLattice, plan: _Plan, domain: int, fixed: dict[int, int],
               chain_ok: Callable[[tuple[int, ...]], bool] | None, image: list) -> Iterator[list]:
    up, down = lat.up_sets, lat.down_sets
    order, constraints, completing = plan.order, plan.constraints, plan.completing
    depth = len(order)

    def place(i, used):
        if i == depth:
            yield image
            return
        p = order[i]
        cand = domain & ~used
        if p in fixed:
            cand &= 1 << fixed[p]
        for q, kind in constraints[i]:
            if not cand:
                return
            y = image[q]
            if kind == _UP:
                cand &= up[y]
            elif kind == _DOWN:
                cand &= down[y]
            else:
                cand &= ~(up[y] | down[y])
        checks = completing[i] if chain_ok is not None else ()
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            image[p] = v
            if checks and not all(chain_ok(tuple(image[a] for a in ch)) for ch in checks):
                continue
            yield from place(i + 1, used | low)
        image[p] = None

    yield from place(0, 0)


def _domain_bits(lat: BooleanLattice, allowed) -> int:
    if allowed is None:
        return lat.all_bits
    if isinstance(allowed, int):
        return allowed
    bits = 0
    for s in range(lat.size):
        if allowed(s):
            bits |= 1 << s
    return bits


def iter_embeddings(host, poset: TargetPoset, mode: str, allowed=None) -> Iterator[Embedding]:
    """Every embedding whose images lie in ``allowed`` (predicate or bitset)."""
    strong = _check_mode(mode)
    lat = _lattice(host)
    if poset.size > lat.size:
        return
    plan = _Plan(poset, search_order(poset), strong)
    image = [None] * poset.size
    for img in _backtrack(lat, plan, _domain_bits(lat, allowed), {}, None, image):
        yield Embedding(poset, tuple(img), mode)


def find_copy(host, poset: TargetPoset, mode: str, allowed=None) -> Embedding | None:
    """The first embedding in canonical search order, or ``None``."""
    return next(iter_embeddings(host, poset, mode, allowed), None)


def count_embeddings(host, poset: TargetPoset, mode: str, allowed=None) -> int:
    strong = _check_mode(mode)
    lat = _lattice(host)
    if poset.size > lat.size:
        return 0
    plan = _Plan(poset, search_order(poset), strong)
    image = [None] * poset.size
    return sum(1 for _ in _backtrack(lat, plan, _domain_bits(lat, allowed), {}, None, image))


def copy_through(lat: BooleanLattice, poset: TargetPoset, strong: bool, domain: int,
                 element: int, plans: dict | None = None,
                 pins: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """A copy inside ``domain`` that uses host element ``element``, if any.

    ``pins`` restricts which target elements are tried as the preimage of
    ``element``; one representative per automorphism orbit suffices.
    """
    if not domain >> element & 1:
        return None
    for p in (range(poset.size) if pins is None else pins):
        if plans is not None and p in plans:
            plan = plans[p]
        else:
            plan = _Plan(poset, search_order(poset, [p]), strong)
            if plans is not None:
                plans[p] = plan
        image = [None] * poset.size
        for img in _backtrack(lat, plan, domain, {p: element}, None, image):
            return tuple(img)
    return None


# --- colored copies ---------------------------------------------------------

def _chain_requirements(poset: TargetPoset, t: int) -> list[tuple[int, ...]]:
    if t == 1:
        return []
    chains = poset.t_chains(t)
    if not chains:
        raise ParameterError(f"{poset} has no {t}-chain; a colored copy is not defined")
    return chains


def find_monochromatic_copy(host, poset: TargetPoset, mode: str, coloring: ChainColoring,
                            color: int) -> Embedding | None:
    """First copy of ``poset`` all of whose t-chains are colored ``color``.

    For ``t == 1`` every image must carry ``color``.  For ``t >= 2`` the
    images of the poset's t-chains must carry ``color``; elements lying in
    no t-chain are unconstrained.
    """
    strong = _check_mode(mode)
    lat = _lattice(host)
    if coloring.host_n != lat.n:
        raise ParameterError("coloring and host dimensions differ")
    if poset.size > lat.size:
        return None
    t = coloring.t
    if t == 1:
        domain = coloring.class_bits(color)
        plan = _Plan(poset, search_order(poset), strong)
        chain_ok = None
    else:
        reqs = _chain_requirements(poset, t)
        domain = lat.all_bits
        plan = _Plan(poset, search_order(poset), strong, reqs)
        ids = chain_ids(lat.n, t)
        colors = coloring.colors

        def chain_ok(images):
            return colors[ids[images]] == color

    image = [None] * poset.size
    for img in _backtrack(lat, plan, domain, {}, chain_ok, image):
        return Embedding(poset, tuple(img), mode)
    return None


def monochromatic_copy_exists(host, poset: TargetPoset, mode: str, coloring: ChainColoring,
                              color: int) -> bool:
    return find_monochromatic_copy(host, poset, mode, coloring, color) is not None


# --- counting -----------------------------------------------------------------

STRONG_EMBEDDING_CAP = (3, 6)


def enumerate_strong_boolean_embeddings(m: int, n: int) -> int:
    """Exact number of strong embeddings of ``B_m`` into ``B_n``."""
    if not 0 <= m <= n:
        raise ParameterError("need 0 <= m <= N")
    if m > STRONG_EMBEDDING_CAP[0] or n > STRONG_EMBEDDING_CAP[1]:
        raise InfeasibleSizeError(f"e({m},{n}) exceeds the enumeration cap m<=3, N<=6")
    return count_embeddings(n, boolean_poset(m), "strong")


def embedding_count_upper_bound(m: int, n: int) -> int:
    """``2 ** (2 * C(m, m//2) * (N - m))``; asymptotic in spirit, see docs."""
    if not 0 <= m <= n:
        raise ParameterError("need 0 <= m <= N")
    return 2 ** (2 * comb(m, m // 2) * (n - m))


ANTICHAIN_CAP = 6


def _down_sets(m: int) -> list[int]:
    """All down-sets of ``B_m`` as bitsets over the ``2**m`` masks."""
    sets = [0, 1]  # B_0: empty family, {∅}
    for j in range(1, m + 1):
        shift = 1 << (j - 1)
        # a down-set of B_j is a pair lower ⊇ upper of down-sets of B_{j-1}
        sets = [lower | (upper << shift) for lower in sets for upper in sets if upper & lower == upper]
    return sets


def count_antichains(m: int) -> int:
    """Number of antichains of ``B_m`` (empty family included).

    Antichains correspond to down-sets via their maximal elements.  A
    down-set of ``B_m`` is a pair ``upper ⊆ lower`` of down-sets of
    ``B_{m-1}``; the last level of that recursion is counted with numpy.
    """
    if not 0 <= m <= ANTICHAIN_CAP:
        raise InfeasibleSizeError(f"antichain count capped at m <= {ANTICHAIN_CAP}")
    if m == 0:
        return 2
    base = np.array(_down_sets(m - 1), dtype=np.uint64)
    total = 0
    for lower in base:
        total += int(np.count_nonzero((base & ~lower) == 0))
    return total


def chain_copy_through(lat: BooleanLattice, poset: TargetPoset, strong: bool, chain: tuple[int, ...],
                       chain_ok: Callable[[tuple[int, ...]], bool], pin_chains: Sequence[tuple[int, ...]],
                       plans: dict) -> tuple[int, ...] | None:
    """A copy whose t-chains all pass ``chain_ok`` and one of which maps onto ``chain``."""
    reqs = poset.t_chains(len(chain))
    for a in pin_chains:
        plan = plans.get(a)
        if plan is None:
            plan = plans[a] = _Plan(poset, search_order(poset, a), strong, reqs)
        image = [None] * poset.size
        for img in _backtrack(lat, plan, lat.all_bits, dict(zip(a, chain)), chain_ok, image):
            return tuple(img)
    return None
