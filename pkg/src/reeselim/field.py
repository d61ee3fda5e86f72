"""Coefficient fields: the rationals and prime fields."""

from fractions import Fraction
from functools import lru_cache

__all__ = ["Field", "QQ", "GF", "parse_field"]


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """Exact coefficient field, either QQ (characteristic 0) or GF(p).

    Elements are plain Python numbers. Over QQ an element is an ``int`` when
    integral and a reduced ``Fraction`` otherwise; over GF(p) it is an
    ``int`` in ``range(p)``.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        object.__setattr__(self, "characteristic", characteristic)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def name(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        return self(Fraction(value))

    # raw arithmetic results are normalized with this; cheaper than __call__
    def norm(self, c):
        p = self.characteristic
        if p:
            return c % p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return self.norm(Fraction(1) / c)

    def div(self, a, b):
        p = self.characteristic
        if p:
            return a * pow(b, -1, p) % p
        return self.norm(Fraction(a) / b)

    def pth_root(self, c):
        """p-th root of a field element; identity over GF(p) since Frobenius is trivial."""
        if not self.characteristic:
            raise ValueError("p-th roots only make sense in positive characteristic")
        return c

    def elements(self):
        if not self.characteristic:
            raise ValueError("QQ is infinite")
        return range(self.characteristic)

    def to_text(self, c):
        p = self.characteristic
        if p and c > p // 2:
            c -= p
        return str(c)


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p):
    return Field(p)


def parse_field(text):
    """Read ``QQ`` or ``GF(p)`` (also ``F_p``, ``GF p``)."""
    t = text.strip().replace(" ", "")
    if t.upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    for prefix in ("GF(", "F("):
        if t.upper().startswith(prefix) and t.endswith(")"):
            return GF(int(t[len(prefix):-1]))
    for prefix in ("GF", "F_", "F"):
        if t.upper().startswith(prefix) and t[len(prefix):].isdigit():
            return GF(int(t[len(prefix):]))
    raise ValueError(f"unknown field {text!r}")
