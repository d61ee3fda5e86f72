"""Finite grids of rational points used to sample singular loci."""

from fractions import Fraction
from itertools import product

from .rees import is_singular_at, normalize_weights

__all__ = ["DEFAULT_VALUES", "probe_grid", "singular_probes", "parse_grid_spec"]

DEFAULT_VALUES = (0, 1, -1, 2)


def probe_grid(ring, values=None):
    """All points with coordinates in ``values``.

    Defaults: {0, 1, -1, 2} over QQ and the whole of GF(p)^d otherwise.
    """
    if values is None:
        values = ring.field.elements() if ring.characteristic else DEFAULT_VALUES
    vals = sorted({ring.field(v) for v in values}, key=lambda v: (abs(v), v))
    return [tuple(p) for p in product(vals, repeat=ring.ngens)]


def singular_probes(G, values=None):
    G = normalize_weights(G)
    return [p for p in probe_grid(G.ring, values) if is_singular_at(G, p)]


def parse_grid_spec(text):
    """``"0,1,-1,2"`` -> values; ``"-2..2"`` -> the integer range."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())
