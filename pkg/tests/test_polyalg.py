import random

import pytest
import sympy

from reeselim import GF, QQ, Ring
from reeselim.polyalg import (
    charpoly,
    determinant,
    gcd_list,
    ideal_member,
    poly_gcd,
    resultant,
    squarefree_part,
    sylvester_matrix,
)

R = Ring(["x", "y", "z"], QQ)


def test_gcd_examples():
    assert poly_gcd(R("4x(x^2-y^3)"), R("6y^2(x^2-y^3)")) == R("x^2-y^3").monic()
    F = Ring(["X", "Y"], GF(2))
    assert poly_gcd(F("(Y^3+X^2)^2"), F("Y^3+X^2")) == F("Y^3+X^2")
    assert gcd_list([R("x*y"), R("x*z"), R("x^2")]) == R("x")


def test_squarefree_part():
    assert squarefree_part(R("x^3*(y-1)^2")) == R("x*(y-1)")
    F = Ring(["X", "Y"], GF(2))
    assert squarefree_part(F("(X^2+Y)^4")) == F("X^2+Y")
    assert squarefree_part(F("X^2+Y^2")) == F("X+Y")


def test_membership_example():
    assert ideal_member(R("z^4"), [R("z^2"), R("z^3+x")])
    assert not ideal_member(R("z"), [R("z^2"), R("z^3+x")])
    assert not ideal_member(R.one, [R("x"), R("y")])


def _witnesses():
    rng = random.Random(11)
    out = []
    for field in (QQ, GF(3)):
        S = Ring(["x", "y", "z"], field)
        for _ in range(10):
            gens = [S.from_dict({tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(1, 4)
                                 for _ in range(rng.randint(1, 3))}) for _ in range(2)]
            cof = [S.from_dict({tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(1, 4)
                                for _ in range(2)}) for _ in range(2)]
            f = sum((a * g for a, g in zip(cof, gens)), S.zero)
            out.append((f, gens))
    return out


@pytest.mark.parametrize("f,gens", _witnesses())
def test_membership_witness(f, gens):
    assert ideal_member(f, gens)


def test_determinant_matches_sympy():
    rng = random.Random(3)
    for n in range(1, 5):
        M = [[R.constant(rng.randint(-3, 3)) + R.gen("x") * rng.randint(-1, 1) for _ in range(n)]
             for _ in range(n)]
        sx = sympy.Symbol("x")
        S = sympy.Matrix([[sympy.sympify(str(e).replace("^", "**"), locals={"x": sx}) for e in row]
                          for row in M])
        assert determinant(M) == R(str(sympy.expand(S.det())).replace("**", "^"))


def test_charpoly_cayley_hamilton_trace_det():
    rng = random.Random(5)
    for n in range(1, 5):
        M = [[R.constant(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        c = charpoly(M)
        assert c[0] == R.one
        assert c[1] == -sum((M[i][i] for i in range(n)), R.zero)
        assert c[-1] == (-1) ** n * determinant(M)


def test_resultant_examples():
    S = Ring(["a1", "a2", "Z"], QQ)
    assert resultant(S("Z^2+a1*Z+a2"), S("2Z+a1"), "Z") == -S("a1^2-4a2")
    assert resultant(S("Z^2+a2"), S("a1+1"), "Z") == S("(a1+1)^2")
    assert len(sylvester_matrix(S("Z^2+a2"), S("Z+a1"), "Z")) == 3


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_resultant_against_split_product(field):
    """Res(prod (Z - r_i), g) = prod g(r_i)."""
    rng = random.Random(17)
    S = Ring(["x", "y", "Z"], field)
    for _ in range(20):
        roots = [S.from_dict({(rng.randint(0, 2), rng.randint(0, 1), 0): rng.randint(-3, 3)
                              for _ in range(2)}) for _ in range(rng.randint(1, 3))]
        F = S.one
        for r in roots:
            F = F * (S.gen("Z") - r)
        g = S.from_dict({(rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 2)): rng.randint(1, 4)
                         for _ in range(3)})
        want = S.one
        for r in roots:
            want = want * g.subs({"Z": r})
        assert resultant(F, g, "Z") == want
