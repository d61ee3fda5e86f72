"""Elimination algebras along coordinate projections.

Given a generator F monic of degree n in a variable Z and of order n at a
simple point, every other generator g acts by multiplication on the free
module S[Z]/(F) with basis 1, Z, ..., Z^(n-1). The coefficients of the
characteristic polynomial of that action, weighted by j*m, generate the
elimination algebra on the ring without Z.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .poly import Poly
from .polyalg import charpoly, determinant, ideal_member
from .rees import (
    NotSingularError,
    ReesAlg,
    is_rel_closed,
    is_singular_at,
    normalize_weights,
    ord_at,
    rel_diff_closure,
)

__all__ = [
    "Transversal",
    "Stage",
    "ElimChain",
    "EliminationError",
    "NotSimpleError",
    "NoTransversalError",
    "NonAdditiveInitialForm",
    "ResourceError",
    "MAX_DEGREE",
    "multiplication_matrix",
    "charpoly_coefficients",
    "transversal_candidates",
    "transversal_from",
    "eliminate",
    "eliminate_chain",
    "find_chain",
    "admissible_orders",
    "tau_at",
    "nested_determinant",
    "NestedDeterminant",
    "MembershipBoundExceeded",
]

MAX_DEGREE = 16


class EliminationError(ValueError):
    pass


class NotSimpleError(EliminationError):
    pass


class ResourceError(EliminationError):
    pass


class NoTransversalError(EliminationError):
    def __init__(self, stage, var, message=None):
        self.stage = stage
        self.var = var
        super().__init__(message or (
            f"no generator is monic in {var} at stage {stage}; "
            "apply linear_change to make one monic and retry"))


class NonAdditiveInitialForm(EliminationError):
    def __init__(self, gen, form):
        self.gen = gen
        self.form = form
        super().__init__(f"initial form {form} of {gen} is not generated by additive forms; tau undetermined")


@dataclass(frozen=True)
class Transversal:
    var: str
    gen_index: int
    degree: int
    monic_form: Poly

    def __str__(self):
        return f"{self.var}: {self.monic_form} (degree {self.degree})"


@dataclass(frozen=True)
class Stage:
    var: str
    transversal: Transversal
    algebra: ReesAlg
    point: tuple


@dataclass(frozen=True)
class ElimChain:
    algebra: ReesAlg
    point: tuple
    stages: tuple = field(default=())

    @property
    def final(self):
        return self.stages[-1].algebra if self.stages else self.algebra

    @property
    def final_point(self):
        return self.stages[-1].point if self.stages else self.point

    @property
    def vars(self):
        return tuple(s.var for s in self.stages)

    def __len__(self):
        return len(self.stages)

    def dumps(self):
        out = []
        for s in self.stages:
            out.append(f"stage {s.var}")
            out.append(f"transversal {s.transversal.monic_form}")
            out += [f"gen {w} {f}" for f, w in s.algebra.gens]
        return "\n".join(out) + ("\n" if out else "")


# -- multiplication maps ------------------------------------------------------------

def _reduce(coeffs, F_low, n):
    """Reduce a coefficient list (index = power of Z) modulo Z^n + sum F_low[j] Z^j."""
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        for j in range(n):
            if not F_low[j].is_zero():
                coeffs[k - n + j] = coeffs[k - n + j] - c * F_low[j]
    return coeffs[:n]


def multiplication_matrix(F, g, var):
    """Matrix of h -> g*h on S[var]/(F) in the basis 1, var, ..., var^(n-1)."""
    n = F.degree(var)
    cf = F.coefficients_in(var)
    lead = cf.get(n)
    if n < 1 or lead is None or not lead.is_constant() or lead.constant_value() != 1:
        raise EliminationError(f"{F} is not monic in {var}")
    zero = F.ring.zero
    F_low = [cf.get(j, zero) for j in range(n)]
    cg = g.coefficients_in(var)
    top = max(cg) if cg else 0
    col = _reduce([cg.get(k, zero) for k in range(max(top + 1, n))], F_low, n)
    cols = [col]
    for _ in range(n - 1):
        shifted = [zero] + col[:-1]
        carry = col[-1]
        if not carry.is_zero():
            shifted = [s - carry * F_low[j] for j, s in enumerate(shifted)]
        col = shifted
        cols.append(col)
    return [[cols[i][j] for i in range(n)] for j in range(n)]


@lru_cache(maxsize=1 << 12)
def charpoly_coefficients(F, g, var, max_degree=MAX_DEGREE):
    """(c_1, ..., c_n) with det(T - g) on S[var]/(F) equal to T^n + c_1 T^(n-1) + ... + c_n."""
    n = F.degree(var)
    if n > max_degree:
        raise ResourceError(f"transversal degree {n} exceeds the cap {max_degree}")
    if not g.involves(var):
        # scalar action: (T - g)^n
        ring = g.ring
        T = [ring.one]
        for _ in range(n):
            T = [a - g * b for a, b in zip(T + [ring.zero], [ring.zero] + T)]
        return tuple(T[1:])
    return tuple(charpoly(multiplication_matrix(F, g, var))[1:])


# -- transversals ----------------------------------------------------------------------

def _check_simple(G, x):
    if not is_singular_at(G, x):
        raise NotSingularError(f"{x} is not in the singular locus")
    if ord_at(G, x) != 1:
        raise NotSimpleError(f"{x} is not a simple point (ord {ord_at(G, x)})")


def transversal_candidates(G, x, var):
    """Generators (f, n) with nu_x(f) = n and f monic of degree n in ``var``."""
    if not G.is_integral():
        raise ValueError("transversal_candidates needs integer weights")
    x = G.ring.point(x)
    _check_simple(G, x)
    out = []
    for i, (f, w) in enumerate(G.gens):
        n = int(w)
        if f.degree(var) != n:
            continue
        lead = f.coefficients_in(var)[n]
        if not lead.is_constant():
            continue
        if f.order_at(x) != n:
            continue
        out.append(Transversal(var, i, n, f / lead.constant_value()))
    return out


def transversal_from(G, var, index=None):
    """Transversal built from a generator without reference to a point.

    Picks the generator at ``index`` (or the first one) that is monic of
    degree equal to its weight in ``var``. Useful for formal eliminations such
    as the discriminant, where the singular locus may be empty.
    """
    if not G.is_integral():
        raise ValueError("transversal_from needs integer weights")
    indices = [index] if index is not None else range(len(G.gens))
    for i in indices:
        f, w = G.gens[i]
        n = int(w)
        if f.degree(var) != n:
            continue
        lead = f.coefficients_in(var)[n]
        if lead.is_constant():
            return Transversal(var, i, n, f / lead.constant_value())
    raise NoTransversalError(0, var)


def eliminate(G, t, mode="passthrough", max_degree=MAX_DEGREE):
    """Elimination algebra of G along ``t.var`` using the transversal ``t``."""
    if mode not in ("passthrough", "charpoly-all"):
        raise ValueError(f"unknown mode {mode!r}")
    if not G.is_integral():
        raise ValueError("eliminate needs integer weights")
    var = t.var
    F = t.monic_form
    if F.ring != G.ring:
        raise EliminationError("transversal lives in another ring")
    if F.degree(var) != t.degree:
        raise EliminationError("transversal degree mismatch")
    lead = F.coefficients_in(var)[t.degree]
    if not lead.is_constant() or lead.constant_value() != 1:
        raise EliminationError(f"{F} is not monic in {var}")
    if not is_rel_closed(G, var):
        raise EliminationError(f"the algebra is not closed under derivatives in {var}; "
                               "apply rel_diff_closure first")
    return _eliminate(G, t, mode, max_degree)


@lru_cache(maxsize=4096)
def _eliminate(G, t, mode, max_degree):
    var = t.var
    down = G.ring.drop(var)
    pairs = []
    for g, m in G.gens:
        if mode == "passthrough" and not g.involves(var):
            pairs.append((down.restrict(g), m))
            continue
        for j, c in enumerate(charpoly_coefficients(t.monic_form, g, var, max_degree), start=1):
            if c.is_zero() or c.is_constant():
                continue
            pairs.append((down.restrict(c), j * m))
    return ReesAlg(down, pairs)


def _drop_coordinate(ring, x, var):
    i = ring.index(var)
    return x[:i] + x[i + 1:]


def _pick(cands):
    return min(cands, key=lambda t: (t.degree, t.gen_index))


def eliminate_chain(G, x, vars, mode="passthrough", max_degree=MAX_DEGREE):
    """Eliminate ``vars`` in order, closing relatively before each step."""
    A = normalize_weights(G)
    x = A.ring.point(x)
    start = (A, x)
    stages = []
    for k, var in enumerate(vars, start=1):
        if var not in A.ring:
            raise EliminationError(f"{var} is not a variable at stage {k}")
        A = rel_diff_closure(A, var)
        try:
            _check_simple(A, x)
        except (NotSimpleError, NotSingularError) as exc:
            raise NotSimpleError(f"stage {k}: {exc}") from None
        cands = transversal_candidates(A, x, var)
        if not cands:
            raise NoTransversalError(k, var)
        t = _pick(cands)
        R = eliminate(A, t, mode, max_degree)
        x = _drop_coordinate(A.ring, x, var)
        stages.append(Stage(var, t, R, x))
        A = R
    return ElimChain(start[0], start[1], tuple(stages))


def _has_candidate(A, x, var):
    A = rel_diff_closure(A, var)
    return bool(transversal_candidates(A, x, var))


def find_chain(G, x, m, order=None, mode="passthrough", max_degree=MAX_DEGREE):
    """Some chain of length m, trying variables in ``order`` preference (backtracking)."""
    A = normalize_weights(G)
    x = A.ring.point(x)
    prefs = list(order) if order is not None else list(A.ring.vars)

    def search(A, x, chosen):
        if len(chosen) == m:
            return chosen
        if ord_at(A, x) != 1 or not is_singular_at(A, x):
            return None
        for var in [v for v in prefs if v in A.ring] + [v for v in A.ring.vars if v not in prefs]:
            if not _has_candidate(A, x, var):
                continue
            B = rel_diff_closure(A, var)
            t = _pick(transversal_candidates(B, x, var))
            R = eliminate(B, t, mode, max_degree)
            found = search(R, _drop_coordinate(B.ring, x, var), chosen + [var])
            if found is not None:
                return found
        return None

    if m == 0:
        return ElimChain(A, x, ())
    _check_simple(A, x)
    found = search(A, x, [])
    if found is None:
        raise NoTransversalError(0, None, f"no coordinate chain of length {m} at {x}")
    return eliminate_chain(A, x, found, mode, max_degree)


def admissible_orders(G, x, m, mode="passthrough"):
    """Every ordered variable tuple of length m along which a chain exists at x."""
    A = normalize_weights(G)
    x = A.ring.point(x)
    out = []
    for combo in permutations(A.ring.vars, m):
        try:
            eliminate_chain(A, x, combo, mode)
        except (EliminationError, NotSingularError):
            continue
        out.append(combo)
    return out


# -- tau ------------------------------------------------------------------------------------

def _additive_root(h, p):
    """For h = sum c_i v_i^(p^e) return (linear form, e); None if h is not of that shape."""
    D = h.total_degree()
    e, q = 0, 1
    while q < D:
        q *= p
        e += 1
    if q != D:
        return None
    ring = h.ring
    lin = {}
    for exps, c in h.terms.items():
        nz = [i for i, k in enumerate(exps) if k]
        if len(nz) != 1:
            return None
        i = nz[0]
        unit = [0] * ring.ngens
        unit[i] = 1
        lin[tuple(unit)] = c  # c^(1/p^e) = c in GF(p)
    return Poly(ring, lin), e


def _rank_select(forms, ring):
    F = ring.field
    basis_rows = []
    chosen = []
    n = ring.ngens
    for lf, lvl in forms:
        row = [0] * n
        for e, c in lf.terms.items():
            row[e.index(1)] = c
        # reduce against current echelon rows
        for piv, brow in basis_rows:
            if row[piv]:
                m = row[piv]
                row = [F.norm(a - m * b) for a, b in zip(row, brow)]
        piv = next((i for i, c in enumerate(row) if c), None)
        if piv is None:
            continue
        inv = F.inv(row[piv])
        row = [F.norm(c * inv) for c in row]
        basis_rows.append((piv, row))
        chosen.append((lf, lvl))
    return chosen


def tau_at(G, x):
    """tau of a differentially closed algebra at a simple point, with a certificate.

    Returns ``(tau, [(linear_form, level), ...])``; at singular non-simple points
    the tangent ideal is zero and tau is 0.
    """
    G = normalize_weights(G)
    x = G.ring.point(x)
    if not is_singular_at(G, x):
        raise NotSingularError(f"{x} is not in the singular locus")
    if ord_at(G, x) != 1:
        return 0, []
    ring = G.ring
    p = ring.characteristic
    additive, other, forms = [], [], []
    for f, w in G.gens:
        if f.order_at(x) != w:
            continue
        h = f.initial_form(x)
        if p == 0:
            root = (h, 0) if h.total_degree() == 1 else None
        else:
            root = _additive_root(h, p)
        if root is None:
            other.append((f, h))
        else:
            additive.append(h)
            forms.append(root)
    for f, h in other:
        if not additive or not ideal_member(h, additive):
            raise NonAdditiveInitialForm(f, h)
    cert = _rank_select(forms, ring)
    return len(cert), cert


# -- nested determinants -------------------------------------------------------------------

@dataclass(frozen=True)
class NestedDeterminant:
    det: Poly
    weight: int
    membership_ok: bool
    exponent: int


class MembershipBoundExceeded(EliminationError):
    pass


def nested_determinant(G, t, g, m, x=None, bound=None):
    """Norm of g along the transversal t, with its order and membership checks."""
    ring = G.ring
    p = ring.characteristic
    if not p:
        raise ValueError("nested_determinant is a positive-characteristic construction")
    n = t.degree
    e, q = 0, 1
    while q < n:
        q *= p
        e += 1
    if q != n:
        raise ValueError(f"transversal degree {n} is not a power of {p}")
    x = ring.point(x if x is not None else ring.origin())
    if Fraction(m) != n or g.order_at(x) != n:
        raise ValueError(f"need nu_x(g) = m = {n}")
    F = t.monic_form
    det = determinant(multiplication_matrix(F, g, t.var))
    down = ring.drop(t.var)
    x1 = _drop_coordinate(ring, x, t.var)
    det_down = down.restrict(det)
    if not det.is_zero() and det_down.order_at(x1) != n * n:
        raise EliminationError(f"determinant order {det_down.order_at(x1)} differs from {n * n}")
    bound = n if bound is None else bound
    for k in range(bound + 1):
        if ideal_member(det ** (p ** k), [F, g]):
            return NestedDeterminant(det_down, n * int(m), True, k)
    raise MembershipBoundExceeded(f"no exponent up to {bound} puts the determinant power in <F, g>")
