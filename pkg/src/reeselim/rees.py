"""Rees algebras presented by weighted generators (f, w).

The order of an algebra at a point is the minimum of nu_x(f)/w over the
generators; the point is singular when that minimum is at least 1.
"""

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .field import parse_field
from .poly import Poly, Ring
from .polyalg import gcd_list, squarefree_part

__all__ = [
    "ReesAlg",
    "NotSingularError",
    "ConsistencyError",
    "ord_at",
    "is_singular_at",
    "is_simple_at",
    "sing_presentation",
    "diff_closure",
    "diff_closure_report",
    "rel_diff_closure",
    "is_rel_closed",
    "twist",
    "normalize_weights",
    "odot",
    "pullback",
    "codim1_component_through",
    "dumps",
    "loads",
]

INF = math.inf


class NotSingularError(ValueError):
    """Raised when an operation needs a point of the singular locus."""


def _weight(w):
    w = Fraction(w)
    if w <= 0:
        raise ValueError(f"weights must be positive, got {w}")
    return w


class ReesAlg:
    """A Rees algebra over ``ring`` generated by pairs ``(poly, weight)``.

    Generators are stored monic. A polynomial listed twice keeps only its
    largest weight, since (f, n) already forces everything (f, m) does for
    m <= n.
    """

    __slots__ = ("ring", "gens", "_hash")

    def __init__(self, ring, gens):
        seen = {}
        for f, w in gens:
            if not isinstance(f, Poly):
                f = ring(f)
            if f.ring != ring:
                f = ring(f)
            if f.is_zero():
                raise ValueError("generators must be nonzero")
            f = f.monic()
            w = _weight(w)
            if f not in seen or seen[f] < w:
                seen[f] = w
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gens", tuple(seen.items()))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ReesAlg is immutable")

    def __reduce__(self):
        return (ReesAlg, (self.ring, self.gens))

    @classmethod
    def parse(cls, ring, pairs):
        """Build from ``[(weight, text), ...]``."""
        return cls(ring, [(ring(t), w) for w, t in pairs])

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        return (isinstance(other, ReesAlg) and self.ring == other.ring
                and set(self.gens) == set(other.gens))

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, frozenset(self.gens)))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = ", ".join(f"({f}, {w})" for f, w in self.gens)
        return f"ReesAlg[{','.join(self.ring.vars)} / {self.ring.field.name}]({body})"

    def __contains__(self, pair):
        f, w = pair
        f = self.ring(f).monic()
        return any(g == f and v >= Fraction(w) for g, v in self.gens)

    def polys(self):
        return [f for f, _ in self.gens]

    def weights(self):
        return [w for _, w in self.gens]

    def is_integral(self):
        return all(w.denominator == 1 for _, w in self.gens)

    def has_unit(self):
        return any(f.is_constant() for f, _ in self.gens)


# -- pointwise invariants ------------------------------------------------------

def ord_at(G, x):
    """min over generators of nu_x(f)/w; inf for the algebra with no generators."""
    x = G.ring.point(x)
    best = INF
    for f, w in G.gens:
        v = f.order_at(x)
        if v == INF:
            continue
        r = Fraction(v) / w
        if r < best:
            best = r
    return best


def is_singular_at(G, x):
    x = G.ring.point(x)
    return all(f.order_at(x) >= w for f, w in G.gens)


def is_simple_at(G, x):
    if not is_singular_at(G, x):
        raise NotSingularError(f"{x} is not in the singular locus")
    return ord_at(G, x) == 1


def _multi_indices(f, max_order):
    """Multi-indices 0 < |alpha| <= max_order supported by the exponents of f."""
    n = f.ring.ngens
    bounds = [0] * n
    for e in f.terms:
        for i, k in enumerate(e):
            if k > bounds[i]:
                bounds[i] = k
    ranges = [range(min(b, max_order) + 1) for b in bounds]
    for alpha in product(*ranges):
        s = sum(alpha)
        if 0 < s <= max_order:
            yield alpha


def _require_integral(G, what):
    if not G.is_integral():
        raise ValueError(f"{what} needs integer weights; call normalize_weights first")


def sing_presentation(G):
    """Polynomials whose common zero set is Sing G: all Delta^alpha f, |alpha| < w."""
    _require_integral(G, "sing_presentation")
    out = []
    seen = set()
    for f, w in G.gens:
        for g in [f] + [f.hasse(a) for a in _multi_indices(f, int(w) - 1)]:
            if g.is_zero():
                continue
            g = g.monic()
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


@lru_cache(maxsize=4096)
def diff_closure_report(G):
    """Differential closure plus the list of unit derivatives that were pruned."""
    _require_integral(G, "diff_closure")
    pairs = list(G.gens)
    pruned = []
    for f, w in G.gens:
        n = int(w)
        for alpha in _multi_indices(f, n - 1):
            d = f.hasse(alpha)
            if d.is_zero():
                continue
            if d.is_constant():
                pruned.append((f, alpha))
                continue
            pairs.append((d, n - sum(alpha)))
    return ReesAlg(G.ring, pairs), tuple(pruned)


def diff_closure(G):
    return diff_closure_report(G)[0]


@lru_cache(maxsize=4096)
def rel_diff_closure(G, var):
    """Closure under Hasse derivatives in ``var`` only."""
    _require_integral(G, "rel_diff_closure")
    G.ring.index(var)
    pairs = list(G.gens)
    for f, w in G.gens:
        n = int(w)
        for k in range(1, min(n - 1, max(f.degree(var), 0)) + 1):
            d = f.hasse_var(var, k)
            if not d.is_zero() and not d.is_constant():
                pairs.append((d, n - k))
    return ReesAlg(G.ring, pairs)


def is_rel_closed(G, var):
    """Whether every Delta_var^k f (0<k<w) is already a generator of weight >= w-k."""
    weights = dict(G.gens)
    for f, w in G.gens:
        n = int(w)
        for k in range(1, min(n - 1, max(f.degree(var), 0)) + 1):
            d = f.hasse_var(var, k)
            if d.is_zero() or d.is_constant():
                continue
            have = weights.get(d.monic())
            if have is None or have < n - k:
                return False
    return True


# -- algebra operations ----------------------------------------------------------

def twist(G, omega):
    omega = _weight(omega)
    return ReesAlg(G.ring, [(f, w * omega) for f, w in G.gens])


def normalize_weights(G):
    """(f, a/b) -> (f^b, a)."""
    if G.is_integral():
        return G
    return ReesAlg(G.ring, [(f ** w.denominator, w.numerator) for f, w in G.gens])


def odot(*algebras):
    ring = algebras[0].ring
    if any(A.ring != ring for A in algebras):
        raise ValueError("odot needs algebras over the same ring")
    return ReesAlg(ring, [g for A in algebras for g in A.gens])


def pullback(G, ring):
    """The same generators viewed in a ring with more variables."""
    return ReesAlg(ring, [(ring.embed(f), w) for f, w in G.gens])


class ConsistencyError(AssertionError):
    """An internal invariant guaranteed by the theory failed to hold."""


def codim1_component_through(G, x):
    """Squarefree equation of the codimension-one part of Sing G through x, or None."""
    x = G.ring.point(x)
    pres = sing_presentation(normalize_weights(G))
    h = gcd_list(pres)
    if h.is_constant() or h.evaluate(x) != 0:
        return None
    r = squarefree_part(h)
    if ord_at(G, x) == 1 and r.order_at(x) != 1:
        raise ConsistencyError(f"codimension-one component {r} is singular at the simple point {x}")
    return r


# -- text form --------------------------------------------------------------------

def dumps(G):
    lines = [f"field {G.ring.field.name}", f"vars {','.join(G.ring.vars)}"]
    lines += [f"gen {w} {f}" for f, w in G.gens]
    return "\n".join(lines) + "\n"


def loads(text, ring=None):
    field = variables = None
    pairs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "field":
            field = parse_field(rest)
        elif key == "vars":
            variables = [v.strip() for v in rest.split(",") if v.strip()]
        elif key == "gen":
            w, _, poly = rest.strip().partition(" ")
            pairs.append((Fraction(w), poly))
        else:
            raise ValueError(f"unknown line {raw!r}")
    if ring is None:
        if field is None or variables is None:
            raise ValueError("missing field or vars header")
        ring = Ring(variables, field)
    return ReesAlg(ring, [(ring(p), w) for w, p in pairs])
