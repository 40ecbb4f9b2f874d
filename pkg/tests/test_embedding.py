import pytest
from hypothesis import given, settings, strategies as st

from posetramsey.coloring import ChainColoring
from posetramsey.embedding import (
    Embedding, count_antichains, count_embeddings, embedding_count_upper_bound,
    enumerate_strong_boolean_embeddings, find_copy, find_monochromatic_copy, is_embedding,
    iter_embeddings,
)
from posetramsey.errors import InfeasibleSizeError, ParameterError
from posetramsey.lattice import (
    antichain_poset, boolean_poset, butterfly_poset, chain_poset, diamond_poset, make_target,
    matching_poset, popcount,
)

from oracles import brute_copies

POSETS = [chain_poset(2), chain_poset(3), antichain_poset(2), matching_poset(2), butterfly_poset(2, 2),
          diamond_poset(2), make_target("cup", 2)]


@pytest.mark.parametrize("p", POSETS, ids=lambda p: p.label)
@pytest.mark.parametrize("mode", ["weak", "strong"])
@pytest.mark.parametrize("n", [2, 3])
def test_embedding_count_matches_brute_force(p, mode, n):
    assert count_embeddings(n, p, mode) == len(brute_copies(n, p.leq, mode == "strong"))


@pytest.mark.parametrize("p", POSETS, ids=lambda p: p.label)
def test_every_enumerated_embedding_is_valid(p):
    for emb in iter_embeddings(3, p, "strong"):
        assert emb.is_valid()


def test_butterfly_needs_three_levels():
    # two adjacent levels of B_3 hold no weak butterfly
    assert find_copy(3, butterfly_poset(2, 2), "weak", lambda s: popcount(s) in (1, 2)) is None
    assert not brute_copies(3, butterfly_poset(2, 2).leq, False, lambda s: popcount(s) in (1, 2))
    assert find_copy(3, butterfly_poset(2, 2), "weak") is not None


def test_diamond_in_b2_only_weakly_fills_it():
    emb = find_copy(2, diamond_poset(2), "strong")
    assert sorted(emb.images) == [0, 1, 2, 3]
    assert find_copy(2, diamond_poset(3), "weak") is None


def test_is_embedding_rejects_non_injective_and_extra_order():
    m2 = matching_poset(2)
    assert not is_embedding(m2, (0, 0, 1, 3), "weak")
    # x1 < y1, x2 < y2, and also x1 < y2: fine weakly, not strongly
    assert is_embedding(m2, (1, 2, 3, 6), "weak")
    assert not is_embedding(m2, (1, 2, 3, 6), "strong")
    with pytest.raises(ParameterError):
        is_embedding(m2, (1, 2, 3, 6), "induced")


def test_allowed_bitset_and_predicate_agree():
    p = chain_poset(3)
    bits = sum(1 << s for s in range(16) if popcount(s) != 2)
    a = count_embeddings(4, p, "weak", bits)
    b = count_embeddings(4, p, "weak", lambda s: popcount(s) != 2)
    assert a == b > 0


def test_embedding_requires_one_image_per_element():
    with pytest.raises(ParameterError):
        Embedding(chain_poset(2), (0,), "weak")


# -- colored copies ----------------------------------------------------------------

def test_monochromatic_copy_respects_color_class():
    col = ChainColoring.by_levels(3, 2, [1, 1, 2, 2])
    assert find_monochromatic_copy(3, chain_poset(3), "weak", col, 1) is None
    assert find_monochromatic_copy(3, chain_poset(2), "weak", col, 2) is not None


def test_chain_coloring_copy_t2():
    # every 2-chain colored 1: any poset with a 2-chain appears in color 1 only
    n = 3
    col = ChainColoring.from_function(n, 2, lambda ch: 1, t=2)
    assert find_monochromatic_copy(n, diamond_poset(2), "strong", col, 1) is not None
    assert find_monochromatic_copy(n, diamond_poset(2), "strong", col, 2) is None


def test_t_chain_copy_needs_a_t_chain():
    col = ChainColoring.from_function(2, 2, lambda ch: 1, t=2)
    with pytest.raises(ParameterError):
        find_monochromatic_copy(2, antichain_poset(2), "weak", col, 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=5, max_size=5))
def test_t2_monochromatic_copy_matches_brute_force(colors):
    n = 2
    chains_colors = tuple(colors)
    col = ChainColoring(n, 2, 2, chains_colors)
    p = chain_poset(3)
    ids = {ch: i for i, ch in enumerate([(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])}
    for c in (1, 2):
        expected = any(
            all(chains_colors[ids[(img[a], img[b])]] == c for a, b in p.strict_pairs())
            for img in brute_copies(n, p.leq, False)
        )
        assert (find_monochromatic_copy(n, p, "weak", col, c) is not None) == expected


# -- counting ------------------------------------------------------------------------

def test_strong_embeddings_of_b1_and_bm():
    assert [enumerate_strong_boolean_embeddings(1, n) for n in range(1, 5)] == [1, 5, 19, 65]
    assert enumerate_strong_boolean_embeddings(2, 2) == 2
    assert enumerate_strong_boolean_embeddings(3, 3) == 6


def test_strong_embeddings_of_b1_closed_form():
    for n in range(1, 6):
        assert enumerate_strong_boolean_embeddings(1, n) == 3 ** n - 2 ** n


def test_strong_embedding_cap():
    with pytest.raises(InfeasibleSizeError):
        enumerate_strong_boolean_embeddings(4, 4)
    with pytest.raises(ParameterError):
        enumerate_strong_boolean_embeddings(3, 2)


def test_embedding_count_upper_bound_formula():
    assert embedding_count_upper_bound(2, 5) == 2 ** 12
    # the counting bound is asymptotic: it can fall below the exact count on tiny hosts
    assert enumerate_strong_boolean_embeddings(1, 3) > embedding_count_upper_bound(1, 3)


def test_antichain_counts():
    assert [count_antichains(m) for m in range(7)] == [2, 3, 6, 20, 168, 7581, 7828354]
    with pytest.raises(InfeasibleSizeError):
        count_antichains(7)


def test_antichain_count_matches_direct_enumeration():
    for m in range(4):
        size = 1 << m
        count = 0
        for fam in range(1 << size):
            members = [s for s in range(size) if fam >> s & 1]
            if all(a == b or (a & b != a and a & b != b) for a in members for b in members):
                count += 1
        assert count == count_antichains(m)
