"""Upper semicontinuous functions on singular loci, evaluated pointwise.

``ord_dm`` is the order of an iterated elimination algebra; ``w_ord`` and
``t_fn`` are the satellite functions on chart records; ``tilde`` attaches to a
simple algebra the twisted join whose singular locus is the maximum stratum;
``gamma`` assembles the orders along successive eliminations into one
lexicographically ordered tuple.
"""

import math
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .elimination import (
    EliminationError,
    NoTransversalError,
    NonAdditiveInitialForm,
    eliminate_chain,
    find_chain,
    tau_at,
)
from .rees import (
    ConsistencyError,
    NotSingularError,
    codim1_component_through,
    diff_closure,
    is_singular_at,
    normalize_weights,
    odot,
    ord_at,
    pullback,
    twist,
)

__all__ = [
    "INF",
    "TValue",
    "GammaError",
    "ord_dm",
    "w_ord",
    "max_w_ord",
    "divisor_exponents",
    "t_fn",
    "tilde",
    "gamma",
    "monomial_case",
    "stratification_report",
    "format_table",
    "format_value",
]

INF = math.inf


class TValue(NamedTuple):
    word: Fraction
    old_count: int

    def __str__(self):
        return f"({format_value(self.word)}, {self.old_count})"


class GammaError(EliminationError):
    def __init__(self, partial, cause):
        self.partial = tuple(partial)
        self.cause = cause
        super().__init__(f"gamma stopped after {format_value(self.partial)}: {cause}")


def format_value(v):
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(a) for a in v) + ")"
    if v == INF:
        return "inf"
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def _closed(G):
    return diff_closure(normalize_weights(G))


def ord_dm(G, x, m, vars=None, mode="passthrough"):
    """Order of the m-th elimination algebra of Diff(G) at the image of x."""
    D = _closed(G)
    x = D.ring.point(x)
    if m == 0:
        return ord_at(D, x)
    if vars is not None:
        if len(vars) != m:
            raise ValueError("need exactly m variables")
        chain = eliminate_chain(D, x, vars, mode)
    else:
        chain = find_chain(D, x, m, mode=mode)
    return ord_at(chain.final, chain.final_point)


# -- satellite functions ---------------------------------------------------------

def _algebra(B):
    return normalize_weights(B.algebra)


def divisor_exponents(B):
    """beta_H = min over generators of (multiplicity of H in f) / weight, per divisor."""
    G = _algebra(B)
    out = {}
    for d in B.divisors:
        i = G.ring.index(d.var)
        out[d.var] = min((Fraction(min(e[i] for e in f.terms)) / w for f, w in G.gens),
                         default=Fraction(0))
    return out


def w_ord(B, x):
    """Order after removing the largest exceptional monomial factor of the algebra."""
    G = _algebra(B)
    x = G.ring.point(x)
    if not is_singular_at(G, x):
        raise NotSingularError(f"{x} is not in the singular locus")
    value = ord_at(G, x)
    for var, beta in divisor_exponents(B).items():
        if x[G.ring.index(var)] == 0:
            value -= beta
    return value


def max_w_ord(B, probes=None):
    """Largest w-ord over the chart origin and ``probes`` that are singular (0 if none)."""
    G = _algebra(B)
    pts = [G.ring.origin()] + [G.ring.point(p) for p in (probes or [])]
    vals = [w_ord(B, p) for p in pts if is_singular_at(G, p)]
    return max(vals, default=Fraction(0))


def t_fn(B, x):
    word = w_ord(B, x)
    hist = B.word_history
    s0 = 0
    if hist:
        s0 = min(i for i, v in enumerate(hist) if v == hist[-1])
    ring = B.ring
    x = ring.point(x)
    old = sum(1 for d in B.divisors if d.birth_stage <= s0 and x[ring.index(d.var)] == 0)
    return TValue(word, old)


def monomial_case(B, probes=None):
    """(is_monomial, witness): w-ord vanishes at every singular probe point."""
    G = _algebra(B)
    pts = [G.ring.origin()] + [G.ring.point(p) for p in (probes or [])]
    sing = [p for p in pts if is_singular_at(G, p)]
    N = lcm(*[int(w) for _, w in G.gens]) if G.gens else 1
    exps = {v: b * N for v, b in divisor_exponents(B).items()}
    witness = {
        "exponents": {v: int(e) if e.denominator == 1 else e for v, e in exps.items()},
        "weight": N,
        "points": sing,
    }
    ok = all(w_ord(B, p) == 0 for p in sing)
    return ok, witness


# -- twisted joins --------------------------------------------------------------------

def tilde(G, x, m, order=None, mode="passthrough", check=True):
    """Diff(G ⊙ beta*(R(omega))) for the m-th elimination algebra R of Diff(G)."""
    D = _closed(G)
    x = D.ring.point(x)
    if m == 0:
        omega = ord_at(D, x)
        if omega <= 1:
            return D
        T = _closed(twist(D, omega))
    else:
        chain = find_chain(D, x, m, order, mode)
        R = chain.final
        omega = ord_at(R, chain.final_point)
        if omega == INF:
            raise ConsistencyError(f"level-{m} algebra has infinite order at {x}")
        if omega <= 1:
            return D
        T = _closed(odot(D, pullback(normalize_weights(twist(R, omega)), D.ring)))
    if check:
        if not is_singular_at(T, x):
            raise ConsistencyError(f"{x} left the singular locus of the twisted join")
        try:
            tau = tau_at(T, x)[0]
        except NonAdditiveInitialForm:
            tau = None
        if tau is not None and tau < m + 1:
            raise ConsistencyError(f"tau {tau} < {m + 1} for the twisted join at {x}")
    return T


# -- gamma ----------------------------------------------------------------------------------

def gamma(G, x, order=None, mode="passthrough"):
    """Stratifying tuple of orders along successive eliminations (length = dimension)."""
    D = _closed(G)
    x = D.ring.point(x)
    if not is_singular_at(D, x):
        raise NotSingularError(f"{x} is not in the singular locus")
    return _gamma(D, x, order, mode, ())


def _gamma(D, x, order, mode, prefix):
    d = D.ring.ngens
    w = ord_at(D, x)
    if w == INF:
        return (INF,) * d
    if w > 1:
        T = _closed(twist(D, w))
        return (w,) + _gamma(T, x, order, mode, prefix + (w,))[1:]
    if d == 1:
        return (Fraction(1),)
    if codim1_component_through(D, x) is not None:
        return (Fraction(1),) + (INF,) * (d - 1)
    try:
        chain = find_chain(D, x, 1, order, mode)
    except NoTransversalError as exc:
        raise GammaError(prefix + (Fraction(1),), exc) from None
    R = _closed(chain.final)
    return (Fraction(1),) + _gamma(R, chain.final_point, order, mode, prefix + (Fraction(1),))


# -- reports -----------------------------------------------------------------------------------

def stratification_report(obj, probes, order=None):
    """One record per probe point of the singular locus: point, ord, w-ord, t, gamma, tau."""
    from .transform import BasicObject

    B = obj if isinstance(obj, BasicObject) else BasicObject.create(obj, probes)
    D = _closed(B.algebra)
    rows = []
    for p in probes:
        p = D.ring.point(p)
        if not is_singular_at(D, p):
            continue
        row = {"point": p, "ord": ord_at(D, p), "w-ord": w_ord(B, p), "t": t_fn(B, p)}
        try:
            row["gamma"] = gamma(D, p, order)
        except (EliminationError, ConsistencyError) as exc:
            row["gamma"] = f"error: {exc}"
        try:
            row["tau"] = tau_at(D, p)[0]
        except NonAdditiveInitialForm:
            row["tau"] = "undetermined"
        rows.append(row)
    return rows


def _cell(v):
    if isinstance(v, TValue):
        return str(v)
    if isinstance(v, tuple):
        return format_value(v)
    if isinstance(v, (Fraction, float, int)):
        return format_value(v if not isinstance(v, int) else Fraction(v))
    return str(v)


def format_table(rows, columns=("point", "ord", "w-ord", "t", "gamma", "tau")):
    cells = [[_cell(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"
