"""Sparse multivariate polynomials with exact coefficients.

A :class:`Ring` fixes an ordered tuple of variable names and a coefficient
:class:`~reeselim.field.Field`. A :class:`Poly` is an immutable map from
exponent tuples to nonzero coefficients. The monomial order is graded
lexicographic with the first variable largest.

>>> R = Ring("x,y", QQ)
>>> f = R("x^2 - y^3")
>>> str(f * f)
'x^4 - 2*x^2*y^3 + y^6'
>>> f.order_at((0, 0))
2
"""

import math
import re
from fractions import Fraction
from functools import lru_cache
from math import comb

from .field import QQ, parse_field

__all__ = ["Ring", "Poly", "PolyParseError", "grlex_key", "linear_change"]

INF = math.inf


def grlex_key(e):
    return (sum(e), e)


class PolyParseError(ValueError):
    pass


class Ring:
    """Polynomial ring k[v_1, ..., v_d] with a fixed variable order."""

    __slots__ = ("vars", "field", "_index", "_hash")

    def __init__(self, variables, field=QQ):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.replace(" ", ",").split(",") if v.strip()]
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if isinstance(field, str):
            field = parse_field(field)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})
        object.__setattr__(self, "_hash", hash((variables, field)))

    def __setattr__(self, name, value):
        raise AttributeError("Ring is immutable")

    def __eq__(self, other):
        return isinstance(other, Ring) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({','.join(self.vars)!r}, {self.field.name})"

    @property
    def ngens(self):
        return len(self.vars)

    @property
    def characteristic(self):
        return self.field.characteristic

    def index(self, var):
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"variable {var!r} not in {self.vars}") from None

    def __contains__(self, var):
        return var in self._index

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Poly(self, {(0,) * self.ngens: c} if c else {})

    def gen(self, var):
        e = [0] * self.ngens
        e[self.index(var)] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exponents, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exponents): c} if c else {})

    def from_dict(self, terms):
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def __call__(self, value):
        if isinstance(value, Poly):
            return self.embed(value)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.constant(value)

    def point(self, coords):
        """Normalize a coordinate sequence into a point of this ring's affine space."""
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.ngens:
            raise ValueError(f"point {coords} has {len(coords)} coordinates, ring has {self.ngens}")
        return coords

    def origin(self):
        return (0,) * self.ngens

    def drop(self, var):
        i = self.index(var)
        return Ring(self.vars[:i] + self.vars[i + 1:], self.field)

    def embed(self, f):
        """Map ``f`` from another ring whose variables all occur here."""
        if f.ring == self:
            return f
        if f.ring.field != self.field:
            raise ValueError("field mismatch")
        pos = [self.index(v) for v in f.ring.vars]
        n = self.ngens
        out = {}
        for e, c in f.terms.items():
            ne = [0] * n
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return Poly(self, out)

    def restrict(self, f):
        """Map ``f`` into this smaller ring; fails if ``f`` uses a missing variable."""
        if f.ring == self:
            return f
        missing = [i for i, v in enumerate(f.ring.vars) if v not in self._index]
        pos = [self.index(v) if v in self._index else None for v in f.ring.vars]
        n = self.ngens
        out = {}
        for e, c in f.terms.items():
            if any(e[i] for i in missing):
                raise ValueError(f"{f} involves a variable outside {self.vars}")
            ne = [0] * n
            for i, k in zip(pos, e):
                if i is not None:
                    ne[i] = k
            out[tuple(ne)] = c
        return Poly(self, out)


class Poly:
    """Immutable sparse polynomial. ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.ring, dict(self.terms)))

    # -- basic predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        t = self.terms
        return not t or (len(t) == 1 and not any(next(iter(t))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.ngens, 0)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                acc[e] = acc.get(e, 0) + ca * cb
        norm = self.ring.field.norm
        out = {}
        for e, c in acc.items():
            c = norm(c)
            if c:
                out[e] = c
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: F.norm(v * c) for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ring.field.inv(self.ring.field(other)))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        q = self.exact_div(other)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- structure ------------------------------------------------------------
    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var):
        if not self.terms:
            return -1
        i = self.ring.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var):
        i = self.ring.index(var)
        return min(e[i] for e in self.terms) if self.terms else INF

    def involves(self, var):
        i = self.ring.index(var)
        return any(e[i] for e in self.terms)

    def variables(self):
        return tuple(v for i, v in enumerate(self.ring.vars) if any(e[i] for e in self.terms))

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1] if self.terms else 0

    def monic(self):
        """Scale so the grlex-leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(self.ring.field.inv(lc))

    def coefficients_in(self, var):
        """Split as sum_k c_k * var^k; returns ``{k: c_k}`` with ``c_k`` free of ``var``."""
        i = self.ring.index(var)
        parts = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly(self.ring, t) for k, t in parts.items()}

    def homogeneous_part(self, d):
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def low_degree(self):
        """Minimal total degree of a term (order at the origin); inf for zero."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    # -- evaluation and local data -------------------------------------------
    def evaluate(self, point):
        F = self.ring.field
        total = 0
        for e, c in self.terms.items():
            v = c
            for a, k in zip(point, e):
                if k:
                    v = v * a ** k
            total += v
        return F.norm(total)

    def translate(self, point):
        """Return f(X + point)."""
        return _translate(self, tuple(point))

    def order_at(self, point):
        """nu_x(f): least total degree after moving ``point`` to the origin."""
        return _order_at(self, tuple(point))

    def initial_form(self, point):
        """Lowest-degree homogeneous part of f at ``point``, in shifted coordinates."""
        if not self.terms:
            raise ValueError("the zero polynomial has no initial form")
        g = self.translate(point)
        return g.homogeneous_part(g.low_degree())

    def hasse(self, alpha):
        """Hasse (divided-power) derivative Delta^alpha."""
        alpha = tuple(alpha)
        if len(alpha) != self.ring.ngens:
            raise ValueError("multi-index length does not match the ring")
        if not any(alpha):
            return self
        return _hasse(self, alpha)

    def hasse_var(self, var, k=1):
        alpha = [0] * self.ring.ngens
        alpha[self.ring.index(var)] = k
        return self.hasse(alpha)

    def derivative(self, var):
        return self.hasse_var(var, 1)

    # -- substitution ---------------------------------------------------------
    def subs(self, mapping, ring=None):
        """Substitute variables by polynomials of ``ring`` (default: same ring).

        Variables absent from ``mapping`` must exist in the target ring.
        """
        ring = ring or self.ring
        images = []
        for v in self.ring.vars:
            if v in mapping:
                g = mapping[v]
                images.append(g if isinstance(g, Poly) else ring.constant(g))
            else:
                images.append(ring.gen(v))
        return _compose(self, images, ring)

    def substitute_monomial(self, image_exponents):
        """Fast path for v -> monomial substitutions (blow-up charts).

        ``image_exponents`` maps a variable to an exponent vector in the same ring.
        """
        n = self.ring.ngens
        idx = {self.ring.index(v): tuple(ev) for v, ev in image_exponents.items()}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in idx:
                    for j, m in enumerate(idx[i]):
                        ne[j] += m * k
                else:
                    ne[i] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(c) for e, c in out.items() if norm(c)})

    # -- division -------------------------------------------------------------
    def exact_div(self, g):
        """Quotient f/g when g divides f exactly, else None."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self.ring.zero
        if len(g.terms) == 1:
            (eg, cg), = g.terms.items()
            F = self.ring.field
            inv = F.inv(cg)
            out = {}
            for e, c in self.terms.items():
                d = tuple(a - b for a, b in zip(e, eg))
                if min(d) < 0:
                    return None
                out[d] = F.norm(c * inv)
            return Poly(self.ring, out)
        F = self.ring.field
        lg, lcg = g.leading_term()
        inv = F.inv(lcg)
        rem = dict(self.terms)
        quot = {}
        norm = F.norm
        while rem:
            e = max(rem, key=grlex_key)
            d = tuple(a - b for a, b in zip(e, lg))
            if min(d) < 0:
                return None
            q = norm(rem[e] * inv)
            quot[d] = q
            for eg, cg in g.terms.items():
                m = tuple(a + b for a, b in zip(d, eg))
                v = norm(rem.get(m, 0) - q * cg)
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return Poly(self.ring, quot)

    def divide_out(self, g):
        """Largest k with g^k | f, and f / g^k."""
        g = self._coerce(g)
        if not g.terms or g.is_constant():
            raise ValueError("divide_out needs a nonconstant divisor")
        if not self.terms:
            raise ValueError("divide_out of the zero polynomial is unbounded")
        if len(g.terms) == 1 and next(iter(g.terms.values())) == 1:
            (eg, _), = g.terms.items()
            k = min(min(e[i] // eg[i] for i in range(len(eg)) if eg[i]) for e in self.terms)
            if k == 0:
                return 0, self
            n = len(eg)
            return k, Poly(self.ring, {tuple(e[i] - k * eg[i] for i in range(n)): c
                                       for e, c in self.terms.items()})
        k, f = 0, self
        while True:
            q = f.exact_div(g)
            if q is None:
                return k, f
            k, f = k + 1, q

    # -- text -----------------------------------------------------------------
    def __str__(self):
        return poly_to_text(self)

    def __repr__(self):
        return f"Poly({poly_to_text(self)!r}, {self.ring!r})"


# -- cached kernels -------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _translate(f, point):
    if not any(point):
        return f
    norm = f.ring.field.norm
    terms = f.terms
    for i, a in enumerate(point):
        if not a:
            continue
        out = {}
        for e, c in terms.items():
            k = e[i]
            if not k:
                out[e] = out.get(e, 0) + c
                continue
            pw = 1
            # x^k -> sum_j C(k, j) a^(k-j) x^j, looping j downward
            for j in range(k, -1, -1):
                ne = e[:i] + (j,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * comb(k, j) * pw
                pw = pw * a
        terms = {}
        for e, c in out.items():
            c = norm(c)
            if c:
                terms[e] = c
    return Poly(f.ring, terms)


@lru_cache(maxsize=1 << 16)
def _order_at(f, point):
    if not f.terms:
        return INF
    return _translate(f, point).low_degree()


@lru_cache(maxsize=1 << 16)
def _hasse(f, alpha):
    norm = f.ring.field.norm
    out = {}
    for e, c in f.terms.items():
        if any(k < a for k, a in zip(e, alpha)):
            continue
        b = 1
        for k, a in zip(e, alpha):
            if a:
                b *= comb(k, a)
        c = norm(c * b)
        if c:
            out[tuple(k - a for k, a in zip(e, alpha))] = c
    return Poly(f.ring, out)


def _compose(f, images, ring):
    powers = [dict() for _ in images]
    result = ring.zero
    for e, c in f.terms.items():
        t = ring.constant(c)
        for i, k in enumerate(e):
            if k:
                pw = powers[i].get(k)
                if pw is None:
                    pw = images[i] ** k
                    powers[i][k] = pw
                t = t * pw
        result = result + t
    return result


# -- printing -------------------------------------------------------------------

def _monomial_text(ring, e):
    parts = []
    for v, k in zip(ring.vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def poly_to_text(f):
    if not f.terms:
        return "0"
    F = f.ring.field
    pieces = []
    # ascending grlex reads naturally for local computations (low order first)
    for e in sorted(f.terms, key=grlex_key):
        c = f.terms[e]
        ctext = F.to_text(c)
        neg = ctext.startswith("-")
        if neg:
            ctext = ctext[1:]
        mono = _monomial_text(f.ring, e)
        if mono:
            body = mono if ctext == "1" else f"{ctext}*{mono}"
        else:
            body = ctext
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise PolyParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise PolyParseError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.toks):
            raise PolyParseError(f"trailing input {self.toks[self.i][1]!r} in {self.text!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                f = f * self.factor()
            elif (kind, val) == ("op", "/"):
                self.take()
                g = self.factor()
                if not g.is_constant() or g.is_zero():
                    raise PolyParseError(f"division by a non-constant or zero in {self.text!r}")
                f = f * self.ring.constant(self.ring.field.inv(g.constant_value()))
            elif kind in ("num", "id") or (kind, val) == ("op", "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            if self.peek() == ("op", "-"):
                raise PolyParseError("negative exponents are not polynomials")
            kind, val = self.take()
            if kind != "num":
                raise PolyParseError(f"exponent must be an integer in {self.text!r}")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "id":
            if val not in self.ring:
                raise PolyParseError(f"unknown variable {val!r}; ring has {self.ring.vars}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            self.expect(")")
            return f
        raise PolyParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text, ring):
    return _Parser(text, ring).parse()


# -- affine changes -----------------------------------------------------------

def _field_rank(rows, field):
    rows = [[field(x) for x in r] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.norm(x * inv) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                m = rows[r][col]
                rows[r] = [field.norm(a - m * b) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def linear_change(f, matrix, shift=None):
    """Substitute v_i -> sum_j matrix[i][j] v_j + shift[i]."""
    R = f.ring
    n = R.ngens
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square of the ring's dimension")
    if _field_rank(matrix, R.field) < n:
        raise ValueError("singular matrix")
    shift = R.point(shift) if shift is not None else R.origin()
    gens = R.gens()
    images = {}
    for i, v in enumerate(R.vars):
        img = R.constant(shift[i])
        for j in range(n):
            if matrix[i][j]:
                img = img + gens[j].scale(matrix[i][j])
        images[v] = img
    return f.subs(images)

