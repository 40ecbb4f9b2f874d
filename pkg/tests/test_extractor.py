import numpy as np
import pytest

from posetramsey.bounds import diamond_bounds
from posetramsey.coloring import ChainColoring
from posetramsey.constructions import diamond_lower_coloring
from posetramsey.embedding import Embedding
from posetramsey.errors import ParameterError
from posetramsey.extractor import extract_monochromatic_diamond, verify_extraction
from posetramsey.lattice import chain_poset, popcount


def _random_coloring(k, n, rng):
    return ChainColoring(n, 1, k, tuple(int(c) for c in rng.integers(1, k + 1, size=1 << n)))


def _check_trail(k, r, ex, coloring):
    tower, layers = ex.tower, ex.layers
    assert tower[0] == 0
    for i, x in enumerate(tower):
        assert popcount(x) == i * r
    for i, layer in enumerate(layers, start=1):
        assert len(layer) == r
        assert len({coloring.colors[y] for y in layer}) == 1
        for y in layer:
            assert popcount(y) == (i - 1) * r + 1
            assert popcount(y & ~tower[i - 1]) == 1
            assert y & tower[i] == y
    i1, i2, i3 = ex.indices
    assert 0 <= i1 < i2 < i3 <= 2 * k
    assert ex.layer_colors[i1] == ex.layer_colors[i2] == ex.layer_colors[i3] == ex.color


def test_single_color_on_b2():
    col = ChainColoring(2, 1, 1, (1, 1, 1, 1))
    ex = extract_monochromatic_diamond(1, 2, col)
    assert sorted(ex.embedding.images) == [0, 1, 2, 3]
    assert ex.color == 1


@pytest.mark.parametrize("k,r", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_random_colorings(k, r):
    n = diamond_bounds(k, r)[1]
    rng = np.random.default_rng(1000 * k + r)
    for _ in range(100):
        col = _random_coloring(k, n, rng)
        ex = extract_monochromatic_diamond(k, r, col)
        assert verify_extraction(ex.embedding, col, ex.color)
        _check_trail(k, r, ex, col)


def test_adversarial_level_colorings():
    # colorings constant on levels are the extremal shape for this problem
    k, r = 2, 2
    n = diamond_bounds(k, r)[1]
    rng = np.random.default_rng(5)
    for _ in range(50):
        levels = [int(c) for c in rng.integers(1, k + 1, size=n + 1)]
        col = ChainColoring.by_levels(n, k, levels)
        ex = extract_monochromatic_diamond(k, r, col)
        assert verify_extraction(ex.embedding, col, ex.color)


def test_deterministic():
    rng = np.random.default_rng(3)
    col = _random_coloring(2, 7, rng)
    assert extract_monochromatic_diamond(2, 2, col) == extract_monochromatic_diamond(2, 2, col)


def test_dimension_preconditions():
    with pytest.raises(ParameterError):
        extract_monochromatic_diamond(2, 2, diamond_lower_coloring(2, 2))
    rng = np.random.default_rng(0)
    big = _random_coloring(2, 8, rng)
    with pytest.raises(ParameterError):
        extract_monochromatic_diamond(2, 2, big)
    ex = extract_monochromatic_diamond(2, 2, big, strict=False)
    assert verify_extraction(ex.embedding, big, ex.color)


def test_verification_rejects_mutations():
    rng = np.random.default_rng(9)
    col = _random_coloring(2, 7, rng)
    ex = extract_monochromatic_diamond(2, 2, col)
    other = 1 if ex.color == 2 else 2
    assert not verify_extraction(ex.embedding, col, other)
    images = list(ex.embedding.images)
    top = images[-1]
    # replace the top by a set incomparable with the first middle
    mid = images[1]
    bad_top = next(s for s in range(1 << 7) if s & mid not in (s, mid) and col.colors[s] == ex.color)
    images[-1] = bad_top
    assert not verify_extraction(Embedding(ex.embedding.target, tuple(images), "strong"), col, ex.color)
    assert top != bad_top
    assert not verify_extraction(Embedding(chain_poset(4), (0, 1, 3, 7), "strong"), col, ex.color)
