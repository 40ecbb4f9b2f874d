"""Ramsey verification and exact Ramsey-number search over Boolean hosts.

The engine colors t-chains depth first in canonical id order, trying
colors ``1..k``.  A color is refused as soon as it completes a
monochromatic copy of the matching target through the chain just colored,
so only copies whose chains are all colored can fire.  Symmetry of the
host (ground-set permutations, plus complementation when every target is
self-dual) is exploited by orbital branching: once color ``c`` has been
refuted for chain ``j``, ``c`` is banned on the whole orbit of ``j`` under
the stabilizer of the current partial coloring.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial

from .coloring import ChainColoring, chain_ids, chains_of
from .embedding import Embedding, MODES, chain_copy_through, copy_through, find_monochromatic_copy
from .errors import ParameterError
from .lattice import BooleanLattice, TargetPoset, automorphisms, orbit_representatives

log = logging.getLogger(__name__)

RAMSEY = "ramsey"
NOT_RAMSEY = "not-ramsey"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RamseyInstance:
    """Targets ``P_1..P_k`` (color ``i`` must avoid ``P_i``), chain size and copy mode."""

    targets: tuple[TargetPoset, ...]
    t: int = 1
    mode: str = "weak"
    family: str = "B"

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.targets:
            raise ParameterError("need at least one target poset")
        if self.t < 1:
            raise ParameterError("t must be positive")
        if self.mode not in MODES:
            raise ParameterError(f"mode must be weak or strong, got {self.mode!r}")
        if self.family not in ("B", "C"):
            raise ParameterError("host family must be 'B' (Boolean lattices) or 'C' (chains)")
        if self.family == "C" and self.t < 2:
            raise ParameterError("chain hosts are only meaningful for t >= 2")
        if self.t >= 2:
            for p in self.targets:
                if not p.t_chains(self.t):
                    raise ParameterError(f"{p} has no {self.t}-chain")

    @property
    def k(self) -> int:
        return len(self.targets)

    def targets_text(self) -> str:
        return ",".join(p.label for p in self.targets)

    def __str__(self):
        star = "#" if self.mode == "strong" else ""
        return f"R{star}_{{{self.k},{self.t}}}({self.family}|{self.targets_text()})"


# --- symmetry ---------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryGroup:
    """Ground-set permutations of ``B_n``, optionally times complementation."""

    host_n: int
    reversal: bool

    @property
    def order(self) -> int:
        base = factorial(self.host_n)
        return base * 2 if self.reversal and self.host_n > 0 else base

    @property
    def name(self) -> str:
        if self.order == 1:
            return "trivial"
        return f"S_{self.host_n}" + (" x reversal" if self.reversal else "")

    def element_maps(self) -> list[tuple[int, ...]]:
        n = self.host_n
        size = 1 << n
        full = size - 1
        maps = []
        for perm in permutations(range(n)):
            img = []
            for s in range(size):
                out = 0
                for i in range(n):
                    if s >> i & 1:
                        out |= 1 << perm[i]
                img.append(out)
            maps.append(tuple(img))
            if self.reversal and n > 0:
                maps.append(tuple(full ^ x for x in img))
        return maps

    def chain_maps(self, t: int) -> list[tuple[int, ...]]:
        """The group acting on canonical t-chain ids."""
        if t == 1:
            return self.element_maps()
        chains = chains_of(self.host_n, t)
        ids = chain_ids(self.host_n, t)
        out = []
        for g in self.element_maps():
            mapped = []
            for ch in chains:
                img = [g[s] for s in ch]
                if len(img) > 1 and img[0] & img[-1] == img[-1]:
                    img.reverse()
                mapped.append(ids[tuple(img)])
            out.append(tuple(mapped))
        return out


def canonical_symmetry_group(instance: RamseyInstance, host_n: int) -> SymmetryGroup:
    reversal = all(p.is_self_dual() for p in instance.targets)
    return SymmetryGroup(host_n, reversal)


# --- verification -------------------------------------------------------------

@dataclass(frozen=True)
class ColoringVerdict:
    good: bool
    color: int | None = None
    witness: Embedding | None = None

    def __str__(self):
        if self.good:
            return "good"
        return f"bad(color {self.color}, images {list(self.witness.images)})"


def _check_shape(instance: RamseyInstance, host_n: int, coloring: ChainColoring):
    if (coloring.host_n, coloring.t, coloring.k) != (host_n, instance.t, instance.k):
        raise ParameterError(
            f"coloring shape (n={coloring.host_n}, t={coloring.t}, k={coloring.k}) does not match "
            f"(n={host_n}, t={instance.t}, k={instance.k})")


def verify_coloring(instance: RamseyInstance, host_n: int, coloring: ChainColoring) -> ColoringVerdict:
    """Good iff no color ``i`` carries a monochromatic copy of ``P_i``."""
    _check_shape(instance, host_n, coloring)
    lat = BooleanLattice(host_n)
    for i, target in enumerate(instance.targets, start=1):
        w = find_monochromatic_copy(lat, target, instance.mode, coloring, i)
        if w is not None:
            return ColoringVerdict(False, i, w)
    return ColoringVerdict(True)


# --- certificates (data only; text format lives in certificate.py) -------------

@dataclass(frozen=True)
class Certificate:
    kind: str  # "good-coloring" | "exhaustion"
    instance: RamseyInstance
    host_n: int
    coloring: ChainColoring | None = None
    # search metadata; two certificates are equal when they certify the same claim
    nodes: int = field(default=0, compare=False)
    group: str = field(default="", compare=False)
    elapsed_ms: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in ("good-coloring", "exhaustion"):
            raise ParameterError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "good-coloring" and self.coloring is None:
            raise ParameterError("a good-coloring certificate needs a coloring")


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0
    group: str = "trivial"
    budget_hit: str = ""


@dataclass(frozen=True)
class RamseyVerdict:
    status: str
    certificate: Certificate | None
    stats: SearchStats

    @property
    def is_ramsey(self) -> bool:
        return self.status == RAMSEY


class _BudgetExceeded(Exception):
    pass


class _Engine:
    def __init__(self, instance: RamseyInstance, host_n: int, group: SymmetryGroup | None,
                 node_budget: int | None, time_budget: float | None):
        self.instance = instance
        self.lat = BooleanLattice(host_n)
        self.t = instance.t
        self.k = instance.k
        self.strong = instance.mode == "strong"
        self.targets = instance.targets
        self.n_items = len(chains_of(host_n, self.t)) if self.t > 1 else self.lat.size
        self.colors = [0] * self.n_items
        self.banned = [0] * self.n_items
        self.class_bits = [0] * (self.k + 1)
        self.plans = [dict() for _ in range(self.k + 1)]
        self.group = group
        self.maps = group.chain_maps(self.t) if group is not None and group.order > 1 else None
        self.node_budget = node_budget
        self.time_budget = time_budget
        self.nodes = 0
        self.start = 0.0
        self.budget_hit = ""
        if self.t == 1:
            self.pins = [None] + [orbit_representatives(p) for p in self.targets]
        else:
            self.chains = chains_of(host_n, self.t)
            self.ids = chain_ids(host_n, self.t)
            self.pins = [None] + [self._chain_reps(p) for p in self.targets]

    def _chain_reps(self, poset: TargetPoset) -> list[tuple[int, ...]]:
        autos = automorphisms(poset)
        reps = set()
        for ch in poset.t_chains(self.t):
            reps.add(min(tuple(g[a] for a in ch) for g in autos))
        return sorted(reps)

    def fires(self, j: int, c: int) -> bool:
        """Would coloring item ``j`` with ``c`` complete a copy of ``P_c``?"""
        target = self.targets[c - 1]
        if self.t == 1:
            domain = self.class_bits[c] | (1 << j)
            return copy_through(self.lat, target, self.strong, domain, j,
                                self.plans[c], self.pins[c]) is not None
        colors, ids = self.colors, self.ids
        colors[j] = c

        def chain_ok(images):
            return colors[ids[images]] == c

        try:
            return chain_copy_through(self.lat, target, self.strong, self.chains[j], chain_ok,
                                      self.pins[c], self.plans[c]) is not None
        finally:
            colors[j] = 0

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            self.budget_hit = "nodes"
            raise _BudgetExceeded
        if self.time_budget is not None and self.nodes & 1023 == 0:
            if time.perf_counter() - self.start > self.time_budget:
                self.budget_hit = "time"
                raise _BudgetExceeded

    def _assign(self, j, c):
        self.colors[j] = c
        if self.t == 1:
            self.class_bits[c] |= 1 << j

    def _unassign(self, j, c):
        self.colors[j] = 0
        if self.t == 1:
            self.class_bits[c] &= ~(1 << j)

    def dfs(self, j: int, stab) -> bool:
        if j == self.n_items:
            return True
        self._tick()
        colors, banned = self.colors, self.banned
        orbit = None
        if stab is not None and len(stab) > 1:
            orbit = {g[j] for g in stab}
            orbit.discard(j)
        undo = []
        try:
            for c in range(1, self.k + 1):
                bit = 1 << c
                if banned[j] & bit:
                    continue
                if not self.fires(j, c):
                    self._assign(j, c)
                    if stab is None:
                        sub = None
                    else:
                        sub = [g for g in stab if colors[g[j]] == c]
                    found = self.dfs(j + 1, sub)
                    if found:
                        return True
                    self._unassign(j, c)
                if orbit:
                    for w in orbit:
                        if not banned[w] & bit:
                            banned[w] |= bit
                            undo.append((w, bit))
            return False
        finally:
            for w, bit in undo:
                banned[w] &= ~bit

    def run(self) -> str:
        self.start = time.perf_counter()
        stab = list(self.maps) if self.maps is not None else None
        try:
            found = self.dfs(0, stab)
        except _BudgetExceeded:
            return INCONCLUSIVE
        return NOT_RAMSEY if found else RAMSEY

    def coloring(self) -> ChainColoring:
        return ChainColoring(self.lat.n, self.t, self.k, tuple(self.colors))


def is_ramsey_at(instance: RamseyInstance, host_n: int, node_budget: int | None = None,
                 time_budget: float | None = None, symmetry: bool = True) -> RamseyVerdict:
    """Decide whether every k-coloring of the t-chains of ``B_host_n`` is forced.

    Returns ``not-ramsey`` with the lexicographically least good coloring,
    ``ramsey`` with an exhaustion certificate, or ``inconclusive`` when the
    node or wall-clock budget (seconds) runs out first.
    """
    if instance.family != "B":
        raise ParameterError("only Boolean-lattice hosts are searched")
    if host_n < 0:
        raise ParameterError("host dimension must be non-negative")
    group = canonical_symmetry_group(instance, host_n) if symmetry else None
    engine = _Engine(instance, host_n, group, node_budget, time_budget)
    status = engine.run()
    elapsed = time.perf_counter() - engine.start
    gname = group.name if group is not None else "trivial"
    stats = SearchStats(engine.nodes, elapsed, gname, engine.budget_hit)
    log.info("%s at n=%d: %s after %d nodes (%.2fs)", instance, host_n, status, engine.nodes, elapsed)
    if status == NOT_RAMSEY:
        cert = Certificate("good-coloring", instance, host_n, engine.coloring(),
                           engine.nodes, gname, int(elapsed * 1000))
    elif status == RAMSEY:
        cert = Certificate("exhaustion", instance, host_n, None, engine.nodes, gname, int(elapsed * 1000))
    else:
        cert = None
    return RamseyVerdict(status, cert, stats)


@dataclass(frozen=True)
class RamseyNumberResult:
    value: int | None
    lower_bound: int
    lower_certificate: Certificate | None
    upper_certificate: Certificate | None
    verdicts: dict[int, RamseyVerdict]

    @property
    def status(self) -> str:
        if self.value is not None:
            return "value"
        if any(v.status == INCONCLUSIVE for v in self.verdicts.values()):
            return INCONCLUSIVE
        return "lower-bound-only"


def compute_ramsey_number(instance: RamseyInstance, n_max: int, node_budget: int | None = None,
                          time_budget: float | None = None, symmetry: bool = True,
                          n_min: int = 1) -> RamseyNumberResult:
    """Scan ``B_1, B_2, ...`` for the first Ramsey dimension.

    Every dimension below the answer is certified by a good coloring and
    the answer itself by exhaustion; the scan stops at the first ramsey or
    inconclusive verdict (the property is monotone in the host dimension).
    """
    verdicts: dict[int, RamseyVerdict] = {}
    last_good: Certificate | None = None
    for n in range(n_min, n_max + 1):
        v = is_ramsey_at(instance, n, node_budget, time_budget, symmetry)
        verdicts[n] = v
        if v.status == RAMSEY:
            return RamseyNumberResult(n, n, last_good, v.certificate, verdicts)
        if v.status == INCONCLUSIVE:
            return RamseyNumberResult(None, n, last_good, None, verdicts)
        last_good = v.certificate
    return RamseyNumberResult(None, n_max + 1, last_good, None, verdicts)


__all__ = [
    "RamseyInstance", "SymmetryGroup", "canonical_symmetry_group", "ColoringVerdict",
    "verify_coloring", "Certificate", "SearchStats", "RamseyVerdict", "is_ramsey_at",
    "RamseyNumberResult", "compute_ramsey_number", "RAMSEY", "NOT_RAMSEY", "INCONCLUSIVE",
]
