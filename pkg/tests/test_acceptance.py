"""The eleven acceptance criteria, one test each.

Every test records a single PASS/FAIL line (collected in the terminal
summary) and then asserts.  Run on its own with
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import random
import time
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from posetramsey.bounds import (
    GUARANTEED, INDETERMINATE, NOT_GUARANTEED, LLLParameters, comparison_table, diamond_bounds, interval_sign,
    lll_threshold_check, strong_lower_bound, walzer_recurrence,
)
from posetramsey.certificate import emit_certificate, load_certificate
from posetramsey.coloring import ChainColoring
from posetramsey.constructions import diamond_lower_coloring, level_block_coloring, matching_lower_coloring
from posetramsey.extractor import extract_monochromatic_diamond, verify_extraction
from posetramsey.lattice import (
    butterfly_poset, chain_count_formula, chain_poset, diamond_poset, enumerate_t_chains, matching_poset,
)
from posetramsey.lubell import lubell, max_lubell_P_free, ramsey_upper_by_lubell, yblm_check
from posetramsey.search import NOT_RAMSEY, RAMSEY, RamseyInstance, is_ramsey_at, verify_coloring


def _dual_certificate(instance, low, high, tmp_path):
    """Good coloring at B_low (emitted, reloaded, re-verified) and exhaustion at B_high both ways."""
    below = is_ramsey_at(instance, low)
    path = tmp_path / "lower.cert"
    ok = below.status == NOT_RAMSEY
    if ok:
        emit_certificate(below.certificate, path)
        ok = load_certificate(path).coloring == below.certificate.coloring
    reduced = is_ramsey_at(instance, high, symmetry=True)
    plain = is_ramsey_at(instance, high, symmetry=False)
    ok = ok and reduced.status == RAMSEY and plain.status == RAMSEY
    detail = f"B_{low} {below.status}; B_{high} {reduced.status} ({reduced.stats.nodes} nodes, " \
             f"{reduced.stats.group}) / plain {plain.status} ({plain.stats.nodes} nodes)"
    return ok, detail


def test_criterion_01_chain_count(report):
    start = time.perf_counter()
    ok = all(chain_count_formula(n, t) == len(enumerate_t_chains(n, t))
             for n in range(0, 9) for t in range(1, n + 2))
    elapsed = time.perf_counter() - start
    ok = report(1, "h_n(t) formula equals enumeration for n <= 8", ok and elapsed < 10, f"{elapsed:.1f}s")
    assert ok


def test_criterion_02_diamond_two_colors(report, tmp_path):
    start = time.perf_counter()
    d = diamond_poset(2)
    ok, detail = _dual_certificate(RamseyInstance((d, d), 1, "strong"), 3, 4, tmp_path)
    elapsed = time.perf_counter() - start
    ok = report(2, "strong R_2(B|diamond_2) = 4", ok and elapsed < 60, f"{detail}; {elapsed:.1f}s")
    assert ok


def test_criterion_03_matching_two_colors(report, tmp_path):
    start = time.perf_counter()
    m = matching_poset(2)
    ok, detail = _dual_certificate(RamseyInstance((m, m), 1, "weak"), 3, 4, tmp_path)
    elapsed = time.perf_counter() - start
    ok = report(3, "R_2(B|M_2) = 4", ok and elapsed < 60, f"{detail}; {elapsed:.1f}s")
    assert ok


def test_criterion_04_butterfly_two_colors(report, tmp_path):
    start = time.perf_counter()
    b = butterfly_poset(2, 2)
    inst = RamseyInstance((b, b), 1, "weak")
    low = is_ramsey_at(inst, 4)
    ok = low.status == NOT_RAMSEY and verify_coloring(inst, 4, low.certificate.coloring).good
    high = is_ramsey_at(inst, 5, node_budget=10 ** 10)
    ok = ok and high.status == RAMSEY
    elapsed = time.perf_counter() - start
    detail = f"B_4 {low.status}; B_5 {high.status} after {high.stats.nodes} nodes ({high.stats.group}); " \
             f"{elapsed:.1f}s"
    ok = report(4, "R_2(B|butterfly) = 5", ok and elapsed < 3600, detail)
    assert ok


def _random_antichain(rng, n):
    members = []
    for _ in range(rng.randint(1, 4 * n)):
        s = rng.randrange(1 << n)
        if all(s & m != s and s & m != m for m in members):
            members.append(s)
    return members


def test_criterion_05_lubell_exactness(report):
    start = time.perf_counter()
    ok = all(lubell(n, range(1 << n)) == n + 1 for n in range(0, 13))
    rng = random.Random(5)
    fuzz_ok = all(yblm_check(n, _random_antichain(rng, n)) for n in (rng.randint(1, 8) for _ in range(10_000)))
    elapsed = time.perf_counter() - start
    ok = report(5, "lu_N(B_N) = N+1 for N <= 12; 10^4 antichains obey YBLM", ok and fuzz_ok and elapsed < 10,
                f"{elapsed:.1f}s")
    assert ok


def test_criterion_06_two_matching_lubell(report):
    start = time.perf_counter()
    res = max_lubell_P_free(5, matching_poset(2), {0, 31})
    elapsed = time.perf_counter() - start
    ok = res.status == "exact" and res.value == Fraction(6, 5)
    ok = report(6, "L_5(M_2; {empty, [5]}) = 6/5", ok and elapsed < 600,
                f"value {res.value}, {res.nodes} nodes, {elapsed:.1f}s")
    assert ok


def test_criterion_07_matching_upper_bounds(report):
    start = time.perf_counter()
    certified = []
    for k in range(3, 13):
        n = k + 2
        crit = ramsey_upper_by_lubell(matching_poset(2), k, n, {0, (1 << n) - 1}, source="lemma34")
        certified.append(crit.certified and crit.lhs == k * (1 + Fraction(1, k + 2)) and crit.rhs == k + 1)
    elapsed = time.perf_counter() - start
    # lower side: the level coloring of B_{k+1} is good, so R_k(B|M_2) > k + 1
    lower = all(
        verify_coloring(RamseyInstance((matching_poset(2),) * k), k + 1, matching_lower_coloring(k, 2)).good
        for k in range(3, 13)
    )
    ok = report(7, "k(1+1/(k+2)) < k+1 for 3 <= k <= 12, with matching lower colorings: R_k(B|M_2) = k+2",
                all(certified) and lower and elapsed < 1, f"inequalities in {elapsed * 1000:.0f} ms")
    assert ok


def test_criterion_08_constructions(report):
    start = time.perf_counter()
    ok = True
    for k in range(2, 6):
        for s in (2, 3):
            m = matching_poset(s)
            ok &= verify_coloring(RamseyInstance((m,) * k), k + 1, matching_lower_coloring(k, s)).good
    for k in range(1, 5):
        for r in (2, 3):
            d = diamond_poset(r)
            col = diamond_lower_coloring(k, r)
            ok &= verify_coloring(RamseyInstance((d,) * k, 1, "strong"), col.host_n, col).good
    c3 = chain_poset(3)
    ok &= verify_coloring(RamseyInstance((c3, c3)), 3, level_block_coloring(2, (2, 2))).good
    elapsed = time.perf_counter() - start
    ok = report(8, "matching, diamond and level-block colorings are good", bool(ok) and elapsed < 60,
                f"{elapsed:.1f}s")
    assert ok


def test_criterion_09_diamond_extractor(report):
    start = time.perf_counter()
    ok = True
    count = 0
    for k, r in ((2, 2), (2, 3), (3, 2)):
        n = diamond_bounds(k, r)[1]
        rng = np.random.default_rng(90_000 + 10 * k + r)
        for _ in range(1000):
            col = ChainColoring(n, 1, k, tuple(int(c) for c in rng.integers(1, k + 1, size=1 << n)))
            ex = extract_monochromatic_diamond(k, r, col)  # raises if any construction step fails
            ok &= verify_extraction(ex.embedding, col, ex.color)
            count += 1
    elapsed = time.perf_counter() - start
    ok = report(9, "extractor finds verified induced diamonds in 3000 random colorings",
                bool(ok) and elapsed < 600, f"{count} colorings, {elapsed:.1f}s")
    assert ok


def test_criterion_10_calculators(report):
    start = time.perf_counter()
    ok = all(diamond_bounds(k, 2) == (2 * k, 5 * k - 3) for k in range(1, 101))
    rows = comparison_table(10, 6)
    ok &= len(rows) == 5 * 5 and all(walzer_recurrence(k, m) for k in range(1, 11) for m in range(2, 7))
    res = strong_lower_bound(3, 2, (2, 2, 2))
    h = chain_count_formula(2, 2)  # 5
    by_hand = min(2 + Fraction(h + (h - 1) * 1 - 1, 4 * 2), 2 + Fraction(h - 1, 2 * 2))
    ok &= res.value == by_hand == 3
    elapsed = time.perf_counter() - start
    ok = report(10, "diamond bounds, recurrence table, strong lower bound example", ok and elapsed < 1,
                f"{elapsed * 1000:.0f} ms")
    assert ok


_crossing_log = []


@st.composite
def _lll_params(draw):
    k = draw(st.integers(2, 4))
    sizes = sorted(draw(st.lists(st.integers(2, 7), min_size=k, max_size=k)))
    sizes[-1] = max(sizes[-1], 3)
    counts = [draw(st.integers(1, n * (n - 1) // 2)) for n in sizes]
    return LLLParameters(2, tuple(sizes), tuple(counts))


@settings(max_examples=150, deadline=None, derandomize=True)
@given(_lll_params(), st.integers(1, 10_000), st.sampled_from([(8,), (16, 32), (64, 128, 256)]))
def _tie_safety_property(params, n, precisions):
    v = lll_threshold_check(params, n, precisions)
    if v.verdict == GUARANTEED:
        assert v.first_margin[0] > 0 and v.second_margin[0] > 0
    elif v.verdict == NOT_GUARANTEED:
        assert v.first_margin[1] < 0 or v.second_margin[1] < 0
    else:
        assert v.verdict == INDETERMINATE
    _crossing_log.append(v.verdict)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(_lll_params())
def _monotone_crossing_property(params):
    verdicts = [lll_threshold_check(params, n).verdict for n in range(1, 64)]
    assert INDETERMINATE not in verdicts
    assert sum(a != b for a, b in zip(verdicts, verdicts[1:])) <= 1


def test_criterion_11_interval_property_suite(report):
    start = time.perf_counter()
    ok = True
    detail = ""
    try:
        _tie_safety_property()
        _monotone_crossing_property()
        tie = interval_sign(lambda ctx: ctx.log(4) - 2 * ctx.log(2))[0]
        hair = interval_sign(lambda ctx: ctx.log(4) - 2 * ctx.log(2) + ctx.mpf(2) ** -100)
        assert tie is None, "exact tie received a sign"
        assert hair[0] == 1 and hair[2] >= 128, "2^-100 gap misjudged"
    except AssertionError as exc:
        ok = False
        detail = str(exc).splitlines()[0] if str(exc) else "property falsified"
    elapsed = time.perf_counter() - start
    seen = sorted(set(_crossing_log))
    ok = report(11, "threshold verdicts never straddle, ties stay undecided, sweeps cross once at most", ok and elapsed < 60,
                f"verdicts seen {seen}; {elapsed:.1f}s {detail}".strip())
    assert ok


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
