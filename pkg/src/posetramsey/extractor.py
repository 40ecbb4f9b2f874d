"""Find a monochromatic induced r-diamond in any k-coloring of ``B_N``, ``N = 3kr - 2r - k + 1``.

Build a tower ``X_0 = ∅ ⊂ X_1 ⊂ ... ⊂ X_{2k-1}`` with ``|X_i| = i r``.  Each
step picks ``r`` same-colored sets ``Y_i^1..Y_i^r`` that add one new element
to ``X_{i-1}`` and lets ``X_i`` be their union.  Three of the colors
``c_0..c_{2k}`` must agree, and those three levels give the diamond.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import ChainColoring
from .embedding import Embedding, is_embedding
from .errors import ParameterError
from .lattice import diamond_poset, is_subset, popcount
from .bounds import diamond_bounds


class ExtractionError(AssertionError):
    """A step of the tower construction failed; this is a bug, not bad input."""


def _require(cond: bool, what: str):
    if not cond:
        raise ExtractionError(what)


@dataclass(frozen=True)
class Extraction:
    embedding: Embedding
    color: int
    tower: tuple[int, ...]            # X_0 .. X_{2k-1}
    layers: tuple[tuple[int, ...], ...]  # Y_i^1..Y_i^r for i = 1..2k-1
    layer_colors: tuple[int, ...]     # c_0 .. c_{2k}
    indices: tuple[int, int, int]     # i_1 < i_2 < i_3


def extract_monochromatic_diamond(k: int, r: int, coloring: ChainColoring, strict: bool = True) -> Extraction:
    """Return a monochromatic induced copy of ``◊_r`` and the trail that produced it.

    With ``strict`` the host dimension must equal ``3kr - 2r - k + 1``;
    otherwise any larger host is accepted.  Ties are broken by the smallest
    color, then the smallest masks.
    """
    need = diamond_bounds(k, r)[1]
    n = coloring.host_n
    if coloring.t != 1 or coloring.k != k:
        raise ParameterError("need an element coloring with k colors")
    if n < need or (strict and n != need):
        raise ParameterError(f"host must be B_{need}" + ("" if strict else " or larger") + f", got B_{n}")
    color = coloring.colors

    tower = [0]
    layers = []
    for i in range(1, 2 * k):
        prev = tower[-1]
        _require(popcount(prev) == (i - 1) * r, f"|X_{i-1}| != {(i - 1) * r}")
        pool = [prev | 1 << b for b in range(n) if not prev >> b & 1]
        _require(len(pool) >= k * (r - 1) + 1, f"step {i}: only {len(pool)} candidate supersets")
        by_color = {}
        for y in pool:
            by_color.setdefault(color[y], []).append(y)
        chosen = None
        for c in sorted(by_color):
            if len(by_color[c]) >= r:
                chosen = tuple(sorted(by_color[c])[:r])
                break
        _require(chosen is not None, f"step {i}: no color repeats {r} times")
        for y in chosen:
            _require(popcount(y) == (i - 1) * r + 1 and popcount(y & ~prev) == 1,
                     f"Y_{i} does not add exactly one element")
        _require(len({color[y] for y in chosen}) == 1, f"Y_{i} not monochromatic")
        x = 0
        for y in chosen:
            x |= y
        layers.append(chosen)
        tower.append(x)
        _require(popcount(x) == i * r, f"|X_{i}| != {i * r}")

    top = tower[-1]
    colors = [color[0]] + [color[layer[0]] for layer in layers] + [color[top]]
    triple = None
    for i1 in range(2 * k + 1):
        for i2 in range(i1 + 1, 2 * k + 1):
            if colors[i2] != colors[i1]:
                continue
            for i3 in range(i2 + 1, 2 * k + 1):
                if colors[i3] == colors[i1]:
                    triple = (i1, i2, i3)
                    break
            if triple:
                break
        if triple:
            break
    _require(triple is not None, "no three equal colors among c_0..c_2k")
    i1, i2, i3 = triple
    bottom = tower[0] if i1 == 0 else layers[i1 - 1][0]
    middles = layers[i2 - 1]
    upper = tower[-1] if i3 == 2 * k else layers[i3 - 1][0]
    for y in middles:
        _require(is_subset(bottom, y) and is_subset(y, upper), "nesting X_0 ⊆ Y ⊆ Y ⊆ X fails")
    images = (bottom,) + tuple(middles) + (upper,)
    emb = Embedding(diamond_poset(r), images, "strong")
    c = colors[i1]
    _require(verify_extraction(emb, coloring, c), "assembled diamond failed verification")
    return Extraction(emb, c, tuple(tower), tuple(layers), tuple(colors), triple)


def verify_extraction(embedding: Embedding, coloring: ChainColoring, color: int) -> bool:
    """Independent check: an induced diamond all of whose images carry ``color``."""
    target = embedding.target
    r = target.size - 2
    if r < 2 or not target.is_isomorphic(diamond_poset(r)):
        return False
    if any(not 0 <= s < len(coloring.colors) for s in embedding.images):
        return False
    if not is_embedding(target, embedding.images, "strong"):
        return False
    return all(coloring.colors[s] == color for s in embedding.images)


__all__ = ["Extraction", "ExtractionError", "extract_monochromatic_diamond", "verify_extraction"]
