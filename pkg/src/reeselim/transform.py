"""Blow-ups along coordinate centers, one affine chart at a time.

In the chart of ``chart_var`` every other center variable ``v`` is replaced by
``v * chart_var``; the new exceptional divisor is ``{chart_var = 0}``. Variable
names are kept, so a chart is again a ring with the same variables.
"""

import json
from dataclasses import dataclass, replace

from .elimination import ElimChain, EliminationError, eliminate_chain
from .rees import ReesAlg, is_singular_at, normalize_weights, ord_at

__all__ = [
    "Chart",
    "CenterSpec",
    "Divisor",
    "BasicObject",
    "NotDivisibleError",
    "CommutationError",
    "center_order",
    "check_permissible",
    "pullback_chart",
    "blowup_chart",
    "pair_transform",
    "strict_transform",
    "commute_elimination",
    "lineage_tree",
    "dumps_lineage",
]


class NotDivisibleError(ArithmeticError):
    pass


class CommutationError(ValueError):
    pass


@dataclass(frozen=True)
class CenterSpec:
    vars: tuple

    def __post_init__(self):
        if not self.vars:
            raise ValueError("a center needs at least one variable")
        object.__setattr__(self, "vars", tuple(self.vars))


@dataclass(frozen=True)
class Chart:
    center: tuple
    chart_var: str

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(self.center))
        if self.chart_var not in self.center:
            raise ValueError(f"chart variable {self.chart_var} is not a center variable")

    def __str__(self):
        return f"center ({','.join(self.center)}) chart {self.chart_var}"


@dataclass(frozen=True)
class Divisor:
    var: str
    birth_stage: int

    def age(self, s0):
        return "old" if self.birth_stage <= s0 else "new"


def _center_vars(c):
    return tuple(c.vars) if isinstance(c, CenterSpec) else tuple(c)


def center_order(f, center):
    """Order of f along the coordinate subspace {v = 0 : v in center}."""
    idx = [f.ring.index(v) for v in center]
    if f.is_zero():
        return float("inf")
    return min(sum(e[i] for i in idx) for e in f.terms)


def pullback_chart(f, chart):
    """Total transform: v -> v * chart_var for the other center variables."""
    ring = f.ring
    j = ring.index(chart.chart_var)
    images = {}
    for v in chart.center:
        if v == chart.chart_var:
            continue
        e = [0] * ring.ngens
        e[ring.index(v)] = 1
        e[j] += 1
        images[v] = e
    return f.substitute_monomial(images)


def _divide_by_power(f, var, k):
    ring = f.ring
    i = ring.index(var)
    if any(e[i] < k for e in f.terms):
        raise NotDivisibleError(f"{var}^{k} does not divide {f}")
    return type(f)(ring, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in f.terms.items()})


def pair_transform(J, b, chart):
    """Controlled transform pi*(J) / E^b of a pair (J, b)."""
    if center_order(J, chart.center) < b:
        raise NotDivisibleError(f"center {chart.center} is not permissible for ({J}, {b})")
    return _divide_by_power(pullback_chart(J, chart), chart.chart_var, int(b))


def strict_transform(f, chart):
    if f.is_zero():
        raise ValueError("strict transform of zero")
    return pullback_chart(f, chart).divide_out(f.ring.gen(chart.chart_var))[1]


@dataclass(frozen=True)
class BasicObject:
    """A chart record: algebra, exceptional divisors, max w-ord per stage, chart lineage."""

    algebra: ReesAlg
    divisors: tuple = ()
    word_history: tuple = ()
    lineage: tuple = ()

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def stage(self):
        return len(self.lineage)

    @classmethod
    def create(cls, algebra, probes=None, divisors=()):
        """Fresh object; stage-0 max ord recorded over the origin and ``probes``."""
        from .invariants import max_w_ord
        B = cls(normalize_weights(algebra), tuple(divisors), (), ())
        return replace(B, word_history=(max_w_ord(B, probes),))

    def restrict_to(self, algebra):
        """Same bookkeeping over a smaller ring (divisors on dropped variables are forgotten)."""
        keep = tuple(d for d in self.divisors if d.var in algebra.ring)
        return BasicObject(algebra, keep, self.word_history, self.lineage)

    def describe(self):
        divs = ", ".join(f"{d.var}@{d.birth_stage}" for d in self.divisors) or "none"
        return (f"stage {self.stage}; divisors {divs}; max w-ord history "
                f"{[str(w) for w in self.word_history]}; algebra {self.algebra!r}")


def check_permissible(B, c):
    """(ok, report) where the report lists generators of too small order along the center."""
    center = _center_vars(c)
    G = normalize_weights(B.algebra if isinstance(B, BasicObject) else B)
    for v in center:
        G.ring.index(v)
    failing = []
    for f, w in G.gens:
        k = center_order(f, center)
        if k < w:
            failing.append((f, w, k))
    report = [f"{f}: order {k} along center < weight {w}" for f, w, k in failing]
    return not failing, report


def blowup_chart(B, c, chart_var, probes=None):
    """Weak transform of B in one chart of the blow-up along the coordinate center c."""
    if isinstance(B, ReesAlg):
        B = BasicObject.create(B)
    center = _center_vars(c)
    chart = Chart(center, chart_var)
    G = normalize_weights(B.algebra)
    ok, report = check_permissible(B, center)
    if not ok:
        raise NotDivisibleError("center is not permissible: " + "; ".join(report))
    pairs = []
    for f, w in G.gens:
        pairs.append((_divide_by_power(pullback_chart(f, chart), chart_var, int(w)), w))
    stage = B.stage + 1
    divisors = tuple(d for d in B.divisors if d.var != chart_var) + (Divisor(chart_var, stage),)
    new = BasicObject(ReesAlg(G.ring, pairs), divisors, B.word_history, B.lineage + (chart,))
    from .invariants import max_w_ord
    return replace(new, word_history=B.word_history + (max_w_ord(new, probes),))


def commute_elimination(B, chain, c, chart_var, probes=None, mode="passthrough"):
    """Blow up upstairs and downstairs in matching charts and check ord agreement.

    Returns ``(upstairs, downstairs)``. For every singular probe point of the
    upstairs chart the upstairs transform is eliminated again along the chain's
    variables and its order compared with the downstairs transform.
    """
    if isinstance(B, ReesAlg):
        B = BasicObject.create(B)
    if isinstance(chain, ElimChain):
        elim_vars, final = chain.vars, chain.final
    else:
        raise TypeError("chain must be an ElimChain")
    center = _center_vars(c)
    if chart_var in elim_vars:
        raise CommutationError(f"chart {chart_var} is an eliminated variable; no projection in that chart")
    missing = [v for v in elim_vars if v not in center]
    if missing:
        raise CommutationError(f"eliminated variables {missing} are not center variables")
    up = blowup_chart(B, center, chart_var, probes)
    if not elim_vars:
        return up, up
    down_center = tuple(v for v in center if v not in elim_vars)
    down0 = B.restrict_to(final)
    # the downstairs history only knows the current stage's maximum
    from .invariants import max_w_ord
    down0 = replace(down0, word_history=B.word_history[:-1] + (
        max_w_ord(down0, _project(probes, B.ring, final.ring)),))
    down = blowup_chart(down0, down_center, chart_var, _project(probes, B.ring, final.ring))
    for x in [up.ring.origin()] + list(probes or []):
        x = up.ring.point(x)
        if not is_singular_at(up.algebra, x):
            continue
        try:
            ch = eliminate_chain(up.algebra, x, elim_vars, mode)
        except EliminationError as exc:
            raise CommutationError(f"upstairs elimination failed at {x}: {exc}") from None
        x1 = ch.final_point
        a, b = ord_at(ch.final, x1), ord_at(down.algebra, x1)
        if a != b:
            raise CommutationError(f"ord mismatch at {x}: eliminate-after-transform {a}, "
                                   f"transform-after-eliminate {b}")
    return up, down


def _project(points, big, small):
    if not points:
        return points
    idx = [big.index(v) for v in small.vars]
    return [tuple(p[i] for i in idx) for p in points]


# -- lineage ---------------------------------------------------------------------------

def _node(B):
    last = B.lineage[-1] if B.lineage else None
    return {
        "center": list(last.center) if last else None,
        "chart": last.chart_var if last else None,
        "divisors": [{"var": d.var, "birth_stage": d.birth_stage} for d in B.divisors],
        "word_history": [str(w) for w in B.word_history],
        "field": B.ring.field.name,
        "vars": list(B.ring.vars),
        "algebra": [[str(w), str(f)] for f, w in B.algebra.gens],
        "children": [],
    }


def lineage_tree(objects):
    """Arrange chart records into a forest keyed by their lineage prefixes."""
    nodes = {}
    for B in objects:
        nodes[B.lineage] = _node(B)
    roots = []
    for key in sorted(nodes, key=len):
        parent = nodes.get(key[:-1]) if key else None
        (parent["children"] if parent is not None else roots).append(nodes[key])
    return roots


def dumps_lineage(objects):
    return json.dumps(lineage_tree(objects), indent=2, sort_keys=True) + "\n"
