"""Ideal-theoretic helpers: gcd, radicals, ideal membership, resultants,
determinants and characteristic polynomials.

gcd and Groebner bases are delegated to sympy's sparse polynomial rings.
Determinants and characteristic polynomials are computed here with
fraction-free elimination so that they work over any coefficient ring of
polynomials.
"""

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import GF as SymGF
from sympy.polys.domains import QQ as SymQQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring as sym_ring

from .poly import Poly

__all__ = [
    "poly_gcd",
    "poly_lcm",
    "gcd_list",
    "squarefree_part",
    "ideal_member",
    "groebner_basis",
    "resultant",
    "sylvester_matrix",
    "determinant",
    "charpoly",
]


@lru_cache(maxsize=None)
def _sym(ring):
    p = ring.characteristic
    domain = SymGF(p) if p else SymQQ
    # sympy needs at least one generator
    names = ring.vars or ("_unused",)
    R, *_ = sym_ring(",".join(names), domain, grlex)
    return R, domain


def _to_sym(f):
    R, domain = _sym(f.ring)
    p = f.ring.characteristic
    out = {}
    for e, c in f.terms.items():
        if not f.ring.ngens:
            e = (0,)
        if p:
            out[e] = domain(c)
        elif isinstance(c, Fraction):
            out[e] = domain(c.numerator, c.denominator)
        else:
            out[e] = domain(c)
    return R.from_dict(out)


def _from_sym(ring, g):
    p = ring.characteristic
    out = {}
    for e, c in g.items():
        if not ring.ngens:
            e = ()
        if p:
            c = int(c) % p
        else:
            c = ring.field(Fraction(int(c.numerator), int(c.denominator)))
        if c:
            out[tuple(e)] = c
    return Poly(ring, out)


def poly_gcd(f, g):
    """Monic (grlex) greatest common divisor."""
    if f.ring != g.ring:
        raise ValueError("ring mismatch")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one
    return _gcd_cached(f, g)


@lru_cache(maxsize=1 << 14)
def _gcd_cached(f, g):
    h = _to_sym(f).gcd(_to_sym(g))
    return _from_sym(f.ring, h).monic()


def gcd_list(polys):
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        raise ValueError("gcd of an empty or all-zero list")
    h = polys[0].monic()
    for f in polys[1:]:
        if h.is_constant():
            break
        h = poly_gcd(h, f)
    return h


def poly_lcm(f, g):
    return (f * g).exact_div(poly_gcd(f, g)).monic()


def _pth_root(f):
    p = f.ring.characteristic
    return Poly(f.ring, {tuple(k // p for k in e): c for e, c in f.terms.items()})


def squarefree_part(f):
    """Product of the distinct irreducible factors of ``f``, made monic.

    Works in every characteristic: when all partial derivatives vanish the
    polynomial is a p-th power and its p-th root is taken instead.
    """
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    if f.is_constant():
        return f.ring.one
    partials = [f.derivative(v) for v in f.variables()]
    partials = [d for d in partials if not d.is_zero()]
    if not partials:
        return squarefree_part(_pth_root(f))
    r = gcd_list([f] + partials)
    a = f.exact_div(r).monic()
    if r.is_constant():
        return a
    return poly_lcm(a, squarefree_part(r))


def groebner_basis(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    R, _ = _sym(ring)
    G = groebner([_to_sym(g) for g in gens], R)
    return [_from_sym(ring, g) for g in G]


@lru_cache(maxsize=1 << 12)
def _basis_key(gens):
    ring = gens[0].ring
    R, _ = _sym(ring)
    return R, groebner([_to_sym(g) for g in gens], R)


def ideal_member(f, gens):
    """Decide f in <gens> by normal form against a grlex Groebner basis."""
    gens = tuple(gens)
    if not gens:
        raise ValueError("ideal_member needs at least one generator")
    if any(g.ring != f.ring for g in gens):
        raise ValueError("ring mismatch")
    if f.is_zero():
        return True
    gens = tuple(g for g in gens if not g.is_zero())
    if not gens:
        return False
    R, G = _basis_key(gens)
    return _to_sym(f).rem(G) == 0


# -- linear algebra over polynomial rings -----------------------------------

def determinant(matrix):
    """Bareiss fraction-free determinant of a square matrix of Poly entries."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    ring = M[0][0].ring
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if piv is None:
                return ring.zero
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                q = num.exact_div(prev)
                if q is None:
                    raise ArithmeticError("Bareiss step was not exact")
                M[i][j] = q
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def charpoly(matrix):
    """Coefficients [1, c_1, ..., c_n] of det(T*I - M), division free (Berkowitz)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    vec = [ring.one]
    for i in range(1, n + 1):
        a = matrix[i - 1][i - 1]
        R = matrix[i - 1][: i - 1]
        C = [matrix[r][i - 1] for r in range(i - 1)]
        A = [row[: i - 1] for row in matrix[: i - 1]]
        col = [ring.one, -a]
        w = C
        for _ in range(i - 1):
            col.append(-_dot(R, w))
            w = [_dot(row, w) for row in A]
        new = []
        for r in range(i + 1):
            s = ring.zero
            for j in range(max(0, r - len(col) + 1), min(r, i - 1) + 1):
                s = s + col[r - j] * vec[j]
            new.append(s)
        vec = new
    return vec


def _dot(u, v):
    s = None
    for a, b in zip(u, v):
        t = a * b
        s = t if s is None else s + t
    return s


def sylvester_matrix(f, g, var):
    m, n = f.degree(var), g.degree(var)
    cf = f.coefficients_in(var)
    cg = g.coefficients_in(var)
    zero = f.ring.zero
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = cf.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = cg.get(k, zero)
        rows.append(row)
    return rows


def resultant(f, g, var):
    """Res_var(f, g) as the Sylvester determinant."""
    if f.ring != g.ring:
        raise ValueError("ring mismatch")
    if f.degree(var) <= 0:
        raise ValueError(f"first argument must have positive degree in {var}")
    if g.is_zero():
        return f.ring.zero
    n = g.degree(var)
    if n == 0:
        return g ** f.degree(var)
    return determinant(sylvester_matrix(f, g, var))
