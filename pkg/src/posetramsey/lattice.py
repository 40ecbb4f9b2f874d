"""Boolean lattices, small abstract posets and t-chains.

Subsets of the ground set ``[n] = {1, ..., n}`` are plain integers: bit
``i - 1`` is set iff element ``i`` belongs to the subset.  Containment is
``a & b == a``.  All public counts are exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import comb
from typing import Iterator, Sequence

from .errors import ParameterError

DEFAULT_DIMENSION_CAP = 28


def popcount(bits: int) -> int:
    return bits.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & b == a


def comparable(a: int, b: int) -> bool:
    return a & b == a or a & b == b


def mask_elements(bits: int) -> list[int]:
    """Ground elements of a mask, ascending (1-based)."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def mask_from_elements(elements) -> int:
    bits = 0
    for e in elements:
        if e < 1:
            raise ParameterError(f"ground elements are 1-based, got {e}")
        bits |= 1 << (e - 1)
    return bits


def format_mask(bits: int) -> str:
    return "{" + ",".join(str(e) for e in mask_elements(bits)) + "}"


def iter_bits(bitset: int) -> Iterator[int]:
    """Positions of the set bits of ``bitset``, ascending."""
    while bitset:
        low = bitset & -bitset
        yield low.bit_length() - 1
        bitset ^= low


@dataclass(frozen=True, order=True)
class SubsetMask:
    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.bits < (1 << self.n):
            raise ParameterError(f"mask {self.bits} is not a subset of [{self.n}]")

    @classmethod
    def from_elements(cls, elements, n: int) -> "SubsetMask":
        return cls(mask_from_elements(elements), n)

    @property
    def cardinality(self) -> int:
        return popcount(self.bits)

    def elements(self) -> list[int]:
        return mask_elements(self.bits)

    def subset_of(self, other: "SubsetMask") -> bool:
        return is_subset(self.bits, other.bits)

    def __str__(self):
        return format_mask(self.bits)


class BooleanLattice:
    """The Boolean lattice ``B_n`` on ground set ``[n]``.

    ``up_sets[S]`` and ``down_sets[S]`` are bitsets over the ``2**n``
    elements: bit ``T`` of ``up_sets[S]`` is set iff ``S ⊆ T``.  They are
    built lazily and cached; memory grows as ``4**n`` bits, so they are
    meant for desk-scale dimensions.
    """

    def __init__(self, n: int, cap: int = DEFAULT_DIMENSION_CAP):
        if not 0 <= n <= cap:
            raise ParameterError(f"dimension {n} outside [0, {cap}]")
        self.n = n
        self.size = 1 << n
        self.full = self.size - 1

    def __repr__(self):
        return f"BooleanLattice({self.n})"

    def __eq__(self, other):
        return isinstance(other, BooleanLattice) and other.n == self.n

    def __hash__(self):
        return hash(("B", self.n))

    def elements(self) -> range:
        return range(self.size)

    def level(self, i: int) -> list[int]:
        return [s for s in range(self.size) if popcount(s) == i]

    def comparable(self, a: int, b: int) -> bool:
        return comparable(a, b)

    @cached_property
    def all_bits(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def level_bits(self) -> list[int]:
        bits = [0] * (self.n + 1)
        for s in range(self.size):
            bits[popcount(s)] |= 1 << s
        return bits

    @cached_property
    def down_sets(self) -> list[int]:
        down = [0] * self.size
        down[0] = 1
        for s in range(1, self.size):
            low = s & -s
            prev = down[s ^ low]
            down[s] = prev | (prev << low)
        return down

    @cached_property
    def up_sets(self) -> list[int]:
        up = [0] * self.size
        up[self.full] = 1 << self.full
        for s in range(self.full - 1, -1, -1):
            missing = self.full & ~s
            low = missing & -missing
            prev = up[s | low]
            up[s] = prev | (prev >> low)
        return up


@dataclass(frozen=True)
class TargetPoset:
    """A finite poset given by its order matrix ``leq[a][b] <=> a <= b``."""

    size: int
    leq: tuple[tuple[bool, ...], ...]
    label: str = ""
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        p = self.size
        if len(self.leq) != p or any(len(row) != p for row in self.leq):
            raise ParameterError("order matrix shape does not match size")
        for a in range(p):
            if not self.leq[a][a]:
                raise ParameterError("order relation is not reflexive")
            for b in range(p):
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise ParameterError("order relation is not antisymmetric")
                if self.leq[a][b]:
                    for c in range(p):
                        if self.leq[b][c] and not self.leq[a][c]:
                            raise ParameterError("order relation is not transitive")

    @classmethod
    def from_relations(cls, size: int, below: Sequence[tuple[int, int]], label: str = "",
                       names: Sequence[str] = ()) -> "TargetPoset":
        """Build from generating pairs ``(a, b)`` meaning ``a < b``; closes transitively."""
        rel = [[a == b for b in range(size)] for a in range(size)]
        for a, b in below:
            rel[a][b] = True
        for m in range(size):
            for a in range(size):
                if rel[a][m]:
                    for b in range(size):
                        if rel[m][b]:
                            rel[a][b] = True
        return cls(size, tuple(tuple(r) for r in rel), label, tuple(names))

    def __str__(self):
        return self.label or f"poset({self.size})"

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def comparable(self, a: int, b: int) -> bool:
        return self.leq[a][b] or self.leq[b][a]

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All ``(a, b)`` with ``a < b``."""
        return [(a, b) for a in range(self.size) for b in range(self.size)
                if a != b and self.leq[a][b]]

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.size),
                            key=lambda a: (sum(self.leq[b][a] for b in range(self.size)), a)))

    def t_chains(self, t: int) -> list[tuple[int, ...]]:
        """Every t-chain of the poset as a tuple listed bottom to top."""
        if t < 1:
            raise ParameterError("t must be positive")
        out: list[tuple[int, ...]] = []
        order = self.topological_order

        def extend(chain, start):
            if len(chain) == t:
                out.append(tuple(chain))
                return
            for idx in range(start, len(order)):
                b = order[idx]
                if not chain or (self.leq[chain[-1]][b] and chain[-1] != b):
                    chain.append(b)
                    extend(chain, idx + 1)
                    chain.pop()

        extend([], 0)
        return out

    @cached_property
    def height(self) -> int:
        best = [1] * self.size
        for b in self.topological_order:
            for a in range(self.size):
                if a != b and self.leq[a][b]:
                    best[b] = max(best[b], best[a] + 1)
        return max(best, default=0)

    def dual(self) -> "TargetPoset":
        leq = tuple(tuple(self.leq[b][a] for b in range(self.size)) for a in range(self.size))
        return TargetPoset(self.size, leq, f"dual({self.label})" if self.label else "", self.names)

    def is_isomorphic(self, other: "TargetPoset") -> bool:
        return find_isomorphism(self, other) is not None

    def is_self_dual(self) -> bool:
        return self.is_isomorphic(self.dual())


def find_isomorphism(p: TargetPoset, q: TargetPoset) -> tuple[int, ...] | None:
    """An order isomorphism ``p -> q`` as an image tuple, or ``None``."""
    if p.size != q.size:
        return None
    n = p.size

    def signature(poset, a):
        return (sum(poset.leq[b][a] for b in range(n)), sum(poset.leq[a][b] for b in range(n)))

    sp = [signature(p, a) for a in range(n)]
    sq = [signature(q, a) for a in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    image = [-1] * n
    used = [False] * n

    def place(a):
        if a == n:
            return True
        for b in range(n):
            if used[b] or sq[b] != sp[a]:
                continue
            if all(p.leq[a][c] == q.leq[b][image[c]] and p.leq[c][a] == q.leq[image[c]][b]
                   for c in range(a)):
                image[a], used[b] = b, True
                if place(a + 1):
                    return True
                used[b] = False
        image[a] = -1
        return False

    return tuple(image) if place(0) else None


def brute_force_isomorphic(p: TargetPoset, q: TargetPoset) -> bool:
    """Isomorphism by trying all ``|P|!`` bijections."""
    if p.size != q.size:
        return False
    n = p.size
    return any(all(p.leq[a][b] == q.leq[f[a]][f[b]] for a in range(n) for b in range(n))
               for f in permutations(range(n)))


# --- named families -------------------------------------------------------

def chain_poset(n: int) -> TargetPoset:
    return TargetPoset.from_relations(n, [(i, i + 1) for i in range(n - 1)], f"chain:{n}",
                                      [f"x{i + 1}" for i in range(n)])


def antichain_poset(n: int) -> TargetPoset:
    return TargetPoset.from_relations(n, [], f"antichain:{n}", [f"x{i + 1}" for i in range(n)])


def matching_poset(s: int) -> TargetPoset:
    # x_i = i, y_i = s + i
    return TargetPoset.from_relations(2 * s, [(i, s + i) for i in range(s)], f"matching:{s}",
                                      [f"x{i + 1}" for i in range(s)] + [f"y{i + 1}" for i in range(s)])


def butterfly_poset(r: int, s: int) -> TargetPoset:
    """``r`` bottoms each below all of ``s`` tops."""
    below = [(i, r + j) for i in range(r) for j in range(s)]
    return TargetPoset.from_relations(r + s, below, f"butterfly:{r}:{s}",
                                      [f"x{i + 1}" for i in range(r)] + [f"y{j + 1}" for j in range(s)])


def cup_poset(s: int) -> TargetPoset:
    """One center below ``s`` pairwise incomparable tops."""
    return TargetPoset.from_relations(s + 1, [(0, j + 1) for j in range(s)], f"cup:{s}",
                                      ["c"] + [f"y{j + 1}" for j in range(s)])


def cap_poset(s: int) -> TargetPoset:
    """``s`` pairwise incomparable bottoms below one center."""
    return TargetPoset.from_relations(s + 1, [(j, s) for j in range(s)], f"cap:{s}",
                                      [f"x{j + 1}" for j in range(s)] + ["c"])


def diamond_poset(r: int) -> TargetPoset:
    # x = 0, y_j = j, z = r + 1
    below = [(0, j) for j in range(1, r + 1)] + [(j, r + 1) for j in range(1, r + 1)]
    return TargetPoset.from_relations(r + 2, below, f"diamond:{r}",
                                      ["x"] + [f"y{j}" for j in range(1, r + 1)] + ["z"])


def boolean_poset(m: int) -> TargetPoset:
    size = 1 << m
    leq = tuple(tuple(is_subset(a, b) for b in range(size)) for a in range(size))
    return TargetPoset(size, leq, f"boolean:{m}", tuple(format_mask(a) for a in range(size)))


_FAMILIES = {
    "chain": (chain_poset, 1),
    "antichain": (antichain_poset, 1),
    "matching": (matching_poset, 1),
    "butterfly": (butterfly_poset, 2),
    "diamond": (diamond_poset, 1),
    "boolean": (boolean_poset, 1),
    "cup": (cup_poset, 1),
    "cap": (cap_poset, 1),
}


def make_target(family: str, *params: int) -> TargetPoset:
    """Named poset constructor: ``make_target("butterfly", 2, 2)``.

    ``boolean`` accepts ``m >= 0``; every other family needs positive
    parameters.
    """
    if family not in _FAMILIES:
        raise ParameterError(f"unknown poset family {family!r}")
    ctor, arity = _FAMILIES[family]
    if len(params) != arity:
        raise ParameterError(f"{family} takes {arity} parameter(s), got {len(params)}")
    lowest = 0 if family == "boolean" else 1
    for v in params:
        if not isinstance(v, int) or v < lowest:
            raise ParameterError(f"{family} parameters must be integers >= {lowest}, got {v!r}")
    if family == "boolean" and params[0] > 6:
        raise ParameterError("boolean target capped at dimension 6")
    return ctor(*params)


def parse_target(text: str) -> TargetPoset:
    """Parse ``family:p1[:p2]``, e.g. ``butterfly:2:2``."""
    family, *raw = text.strip().split(":")
    try:
        params = [int(x) for x in raw]
    except ValueError:
        raise ParameterError(f"bad target parameters in {text!r}") from None
    return make_target(family, *params)


def parse_targets(text: str) -> list[TargetPoset]:
    return [parse_target(part) for part in text.split(",") if part.strip()]


# --- t-chains -------------------------------------------------------------

def enumerate_t_chains(n: int, t: int) -> list[tuple[int, ...]]:
    """All t-chains of ``B_n`` as strictly increasing mask tuples.

    The list is in lexicographic order of the mask tuples; a chain's index
    in this list is its canonical id.
    """
    if n < 0:
        raise ParameterError("dimension must be non-negative")
    if not 1 <= t <= n + 1:
        raise ParameterError(f"t={t} outside [1, {n + 1}] for B_{n}")
    full = (1 << n) - 1
    out: list[tuple[int, ...]] = []
    chain: list[int] = []

    def extend(last):
        if len(chain) == t:
            out.append(tuple(chain))
            return
        comp = full & ~last
        sub = (0 - comp) & comp  # smallest non-empty submask
        while sub:
            chain.append(last | sub)
            extend(last | sub)
            chain.pop()
            sub = (sub - comp) & comp

    for first in range(full + 1):
        chain.append(first)
        extend(first)
        chain.pop()
    return out


def chain_index(chains: Sequence[tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    return {c: i for i, c in enumerate(chains)}


def chain_count_formula(n: int, t: int) -> int:
    """Number of t-chains in ``B_n`` by inclusion-exclusion over empty steps."""
    if n < 0 or t < 1:
        raise ParameterError("need n >= 0 and t >= 1")
    return sum((-1) ** (t - i + 1) * comb(t - 1, i) * (i + 2) ** n for i in range(t))


def level_of_embedding_bound_e(poset: TargetPoset, probe_cap: int) -> tuple[int, bool]:
    """Largest ``m`` such that ``poset`` has no weak copy in ``m`` consecutive levels.

    Host dimensions ``N <= probe_cap`` are searched.  Returns ``(m, verified)``.
    Any weak copy needs ``height`` distinct sizes, so ``m >= height - 1``
    always; the answer is verified when a copy inside ``height`` consecutive
    levels is found (it persists in every larger host).  Otherwise the
    non-embeddability below the found band is only known up to the cap.
    """
    from .embedding import find_copy

    if poset.size < 1 or probe_cap < 1:
        raise ParameterError("need a non-empty poset and a positive probe cap")
    lower = poset.height - 1
    for width in range(poset.height, probe_cap + 2):
        for n in range(width - 1, probe_cap + 1):
            if poset.size > (1 << n):
                continue
            for bottom in range(0, n - width + 2):
                band = range(bottom, bottom + width)
                if find_copy(n, poset, "weak", lambda s, band=band: popcount(s) in band) is not None:
                    return width - 1, width - 1 == lower
    return probe_cap + 1, False


def automorphisms(poset: TargetPoset) -> list[tuple[int, ...]]:
    """All order automorphisms of a small poset."""
    n = poset.size
    out = []
    image = [-1] * n
    used = [False] * n

    def place(a):
        if a == n:
            out.append(tuple(image))
            return
        for b in range(n):
            if used[b]:
                continue
            if all(poset.leq[a][c] == poset.leq[b][image[c]] and poset.leq[c][a] == poset.leq[image[c]][b]
                   for c in range(a)):
                image[a], used[b] = b, True
                place(a + 1)
                used[b] = False
        image[a] = -1

    place(0)
    return out


def orbit_representatives(poset: TargetPoset) -> list[int]:
    """Smallest element of each automorphism orbit."""
    autos = automorphisms(poset)
    return sorted({min(g[a] for g in autos) for a in range(poset.size)})
