"""Closed-form bound calculators.

Inequalities involving ``ln``, ``e`` or ``log2`` are decided with mpmath
interval arithmetic: a verdict is returned only when the interval for the
margin lies strictly on one side of zero, and the working precision is
raised until it does (or a cap is reached).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import iv, mp, mpf

from .embedding import STRONG_EMBEDDING_CAP, embedding_count_upper_bound, enumerate_strong_boolean_embeddings
from .errors import ParameterError
from .lattice import chain_count_formula

GUARANTEED = "guaranteed"
NOT_GUARANTEED = "not-guaranteed"
INDETERMINATE = "indeterminate-at-precision"

PRECISIONS = (64, 128, 256, 512, 1024, 2048)


# --- LLL threshold --------------------------------------------------------------

@dataclass(frozen=True)
class LLLParameters:
    """Sizes ``n_i`` and t-chain counts ``m_i`` of the targets ``P_1..P_k``."""

    t: int
    sizes: tuple[int, ...]
    chain_counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "chain_counts", tuple(self.chain_counts))
        k = len(self.sizes)
        if k < 2 or len(self.chain_counts) != k:
            raise ParameterError("need k >= 2 targets, each with a size and a t-chain count")
        if not 2 <= self.t <= self.sizes[0]:
            raise ParameterError("need 2 <= t <= n_1")
        if any(a > b for a, b in zip(self.sizes, self.sizes[1:])):
            raise ParameterError("target sizes must be nondecreasing")
        if self.sizes[-1] < 3:
            raise ParameterError("need n_k >= 3")
        if self.m < 1:
            raise ParameterError("need m = min(m_1..m_{k-1}) >= 1")
        for n_i, m_i in zip(self.sizes, self.chain_counts):
            if not 1 <= m_i <= comb(n_i, self.t):
                raise ParameterError(f"a {n_i}-element poset has between 1 and C({n_i},{self.t}) t-chains")

    @classmethod
    def from_targets(cls, targets, t: int) -> "LLLParameters":
        """Read ``n_i`` and ``m_i`` off concrete posets (each element must lie in a t-chain)."""
        for p in targets:
            covered = {a for ch in p.t_chains(t) for a in ch}
            if len(covered) != p.size:
                raise ParameterError(f"every element of {p} must lie in a {t}-chain")
        return cls(t, tuple(p.size for p in targets), tuple(len(p.t_chains(t)) for p in targets))

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def m(self) -> int:
        return min(self.chain_counts[:-1])

    @property
    def d(self) -> int:
        return comb(self.sizes[-1], self.t) - self.chain_counts[-1]

    @property
    def a(self) -> int:
        return max(comb(comb(n_i, self.t), m_i) for n_i, m_i in zip(self.sizes[:-1], self.chain_counts[:-1]))

    @property
    def ratio(self) -> Fraction:
        """``m_k / (n_k + t d + 2)``, the bound on ``ln n``."""
        return Fraction(self.chain_counts[-1], self.sizes[-1] + self.t * self.d + 2)

    def c0(self, ctx=mp):
        """``(k-1)^(m-1) / (2 e a) * (n_1/e)^n_1`` in the given mpmath context."""
        e = ctx.e
        n1 = self.sizes[0]
        return ctx.mpf((self.k - 1) ** (self.m - 1)) / (2 * e * self.a) * (ctx.mpf(n1) / e) ** n1

    def probabilities(self, host_size: int) -> tuple[float, ...]:
        """Per-color probabilities ``(p/(k-1), ..., p/(k-1), 1-p)`` for a host of that size."""
        if host_size < 1:
            raise ParameterError("host must have at least one element")
        with mp.workprec(128):
            p = mp.log(host_size) / mpf(self.ratio.numerator) * self.ratio.denominator
            if p >= 1:
                raise ParameterError(
                    f"ln n >= m_k/(n_k+td+2) = {self.ratio}: color probabilities undefined")
            p_i = float(p / (self.k - 1))
        return (p_i,) * (self.k - 1) + (1.0 - p_i * (self.k - 1),)


@dataclass(frozen=True)
class ThresholdVerdict:
    verdict: str
    first_margin: tuple[float, float]
    second_margin: tuple[float, float]
    precision: int
    trivial_coloring: bool

    @property
    def guaranteed(self) -> bool:
        return self.verdict == GUARANTEED


def interval_sign(margin, precisions=PRECISIONS):
    """Rigorous sign of ``margin(iv)``, an expression built in mpmath's interval context.

    Precision is raised through ``precisions`` until the interval excludes
    zero.  Returns ``(sign, interval, precision)`` with ``sign`` 1, -1 or
    ``None`` when even the last precision straddles zero (an exact tie
    always ends that way).
    """
    x = None
    saved = iv.prec
    try:
        for prec in precisions:
            iv.prec = prec
            x = margin(iv)
            if x.a > 0:
                return 1, x, prec
            if x.b < 0:
                return -1, x, prec
    finally:
        iv.prec = saved
    return None, x, precisions[-1]


def lll_threshold_check(params: LLLParameters, n: int, precisions=PRECISIONS) -> ThresholdVerdict:
    """Do both threshold inequalities hold for a host with ``n`` elements?

    Margins are ``RHS - LHS``; positive means the strict inequality holds.
    One certainly failing inequality settles the verdict even if the other
    is unresolved.  ``trivial_coloring`` flags ``n < n_k``, where coloring
    everything with color ``k`` already works.
    """
    if n < 1:
        raise ParameterError("host size must be positive")
    m = params.m
    num, den = params.ratio.numerator, params.ratio.denominator

    def first(ctx):
        return ctx.mpf(num) / den - ctx.log(ctx.mpf(n))

    def second(ctx):
        ratio = ctx.mpf(num) / den
        return params.c0(ctx) * ratio ** m - ctx.log(ctx.mpf(n)) ** m * ctx.mpf(n) ** params.sizes[-2]

    s1, x1, p1 = interval_sign(first, precisions)
    s2, x2, p2 = interval_sign(second, precisions)
    if s1 == -1 or s2 == -1:
        verdict = NOT_GUARANTEED
    elif s1 == 1 and s2 == 1:
        verdict = GUARANTEED
    else:
        verdict = INDETERMINATE
    return ThresholdVerdict(verdict, (float(x1.a), float(x1.b)), (float(x2.a), float(x2.b)),
                            max(p1, p2), n < params.sizes[-1])


def threshold_crossings(params: LLLParameters, n_values) -> list[tuple[int, str]]:
    return [(n, lll_threshold_check(params, n).verdict) for n in n_values]


# --- strong lower bound ------------------------------------------------------------

@dataclass(frozen=True)
class StrongLowerBound:
    value: object  # Fraction unless the irrational first arm attains the minimum (then an mpf)
    first_arm: object
    second_arm: object
    arm: int  # 1 or 2, whichever attains the minimum (1 on ties)

    def as_mpf(self):
        v = self.value
        if isinstance(v, Fraction):
            return mpf(v.numerator) / v.denominator
        return v


def _log2_exact(x: int) -> Fraction | None:
    if x > 0 and x & (x - 1) == 0:
        return Fraction(x.bit_length() - 1)
    return None


def strong_lower_bound(k: int, t: int, dims) -> StrongLowerBound:
    """``min`` of the two arms bounding the strong Ramsey number of ``B_m1..B_mk`` from below."""
    dims = tuple(dims)
    if k < 3:
        raise ParameterError("need k >= 3")
    if t < 2:
        raise ParameterError("need t >= 2")
    if len(dims) != k or any(a > b for a, b in zip(dims, dims[1:])):
        raise ParameterError("need k nondecreasing dimensions m_1 <= ... <= m_k")
    if dims[0] < t - 1:
        raise ParameterError("need m_1 >= t - 1")
    m1, mk = dims[0], dims[-1]
    h1, hk = chain_count_formula(m1, t), chain_count_formula(mk, t)
    second = mk + Fraction(hk - 1, 2 * comb(mk, mk // 2))
    lg = Fraction(0) if h1 == 1 else _log2_exact(k - 1)  # h - 1 = 0 kills the log term
    if lg is not None:
        first = m1 + Fraction(h1 + (h1 - 1) * lg - 1, 4 * comb(m1, m1 // 2))
        arm = 1 if first <= second else 2
    else:
        # log2(k-1) is irrational, so the arms cannot tie; the interval sign separates them
        def gap(ctx):
            arm1 = m1 + (h1 + (h1 - 1) * ctx.log(k - 1) / ctx.log(2) - 1) / (4 * comb(m1, m1 // 2))
            return ctx.mpf(second.numerator) / second.denominator - arm1

        sign, _, _ = interval_sign(gap)
        if sign is None:
            raise ParameterError("could not separate the two arms")
        arm = 1 if sign > 0 else 2
        with mp.workprec(200):
            first = m1 + (h1 + (h1 - 1) * mp.log(k - 1, 2) - 1) / (4 * comb(m1, m1 // 2))
    value = first if arm == 1 else second
    return StrongLowerBound(value, first, second, arm)


# --- c_t bound -------------------------------------------------------------------

@dataclass(frozen=True)
class CtBound:
    value: Fraction | None
    numerator_count: int
    denominator_count: int
    exact_counts: bool
    vacuous: bool  # denominator <= 0, or ratio >= 1 so it says nothing about a probability


def _embedding_count(m: int, n: int) -> tuple[int, bool]:
    if m <= STRONG_EMBEDDING_CAP[0] and n <= STRONG_EMBEDDING_CAP[1]:
        return enumerate_strong_boolean_embeddings(m, n), True
    return embedding_count_upper_bound(m, n), False


def c_t_upper_bound(m: int, n: int, big_n: int, t: int) -> CtBound:
    """``e(m,N) 2^-h_m(t) / (1 - e(n,N) 2^-h_n(t))`` with exact counts when enumerable."""
    if not (0 <= m <= big_n and 0 <= n <= big_n) or t < 1:
        raise ParameterError("need m, n <= N and t >= 1")
    em, exact_m = _embedding_count(m, big_n)
    en, exact_n = _embedding_count(n, big_n)
    num = Fraction(em, 2 ** chain_count_formula(m, t))
    den = 1 - Fraction(en, 2 ** chain_count_formula(n, t))
    if den <= 0:
        return CtBound(None, em, en, exact_m and exact_n, True)
    value = num / den
    return CtBound(value, em, en, exact_m and exact_n, value >= 1)


# --- recurrences -----------------------------------------------------------------

def default_base(m: int) -> dict[int, int]:
    """Small-k strong Ramsey values of ``B_m`` used to seed the recurrences.

    ``R_1 = m`` is trivial.  ``R_2(B_2) = 4`` is computed by this package;
    ``R_2(B_m) <= m^2 - m + 2`` for ``m >= 3`` is a literature bound supplied
    as input, not something verified here.
    """
    if m < 2:
        raise ParameterError("need m >= 2")
    return {1: m, 2: 4 if m == 2 else m * m - m + 2}


def walzer_recurrence(k: int, m: int, base: dict[int, int] | None = None) -> int:
    """``(m-1) R_{k-1} + m + k - 1`` iterated from the base table."""
    table = dict(default_base(m) if base is None else base)
    if k in table:
        return table[k]
    start = max(j for j in table if j < k) if any(j < k for j in table) else None
    if start is None:
        raise ParameterError(f"no base entry below k={k}")
    value = table[start]
    for j in range(start + 1, k + 1):
        value = (m - 1) * value + m + j - 1
    return value


def theorem51_recurrence(k: int, m: int, base: dict[int, int]) -> int:
    """``(b_floor - 2) b_ceil + b_floor`` with ``b`` the base values at ``k//2`` and ``ceil(k/2)``."""
    if k < 6 or m < 2:
        raise ParameterError("need k >= 6 and m >= 2")
    lo, hi = k // 2, (k + 1) // 2
    try:
        b_lo, b_hi = base[lo], base[hi]
    except KeyError as exc:
        raise ParameterError(f"missing base entry R_{exc.args[0]}") from None
    return (b_lo - 2) * b_hi + b_lo


def comparison_table(k_max: int = 10, m_max: int = 6, k_min: int = 6, m_min: int = 2):
    """Rows ``(k, m, halving recurrence, iterated linear recurrence)``.

    The halving recurrence is seeded with the better of the two bounds at
    every smaller ``k``, so each row is a valid bound given the base.
    """
    rows = []
    for m in range(m_min, m_max + 1):
        best = dict(default_base(m))
        for k in range(3, k_max + 1):
            lin = walzer_recurrence(k, m, default_base(m))
            if k >= 6:
                half = theorem51_recurrence(k, m, best)
                best[k] = min(half, lin)
                if k >= k_min:
                    rows.append((k, m, half, lin))
            else:
                best[k] = lin
    return rows


def diamond_bounds(k: int, r: int) -> tuple[int, int]:
    """``(2k, 3kr - 2r - k + 1)``."""
    if k < 1 or r < 2:
        raise ParameterError("need k >= 1 and r >= 2")
    return 2 * k, 3 * k * r - 2 * r - k + 1


__all__ = [
    "LLLParameters", "ThresholdVerdict", "interval_sign", "lll_threshold_check", "threshold_crossings",
    "StrongLowerBound", "strong_lower_bound", "CtBound", "c_t_upper_bound", "default_base",
    "walzer_recurrence", "theorem51_recurrence", "comparison_table", "diamond_bounds",
    "GUARANTEED", "NOT_GUARANTEED", "INDETERMINATE",
]
