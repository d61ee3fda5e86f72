from fractions import Fraction

import pytest

from reeselim import (
    GF,
    INF,
    QQ,
    BasicObject,
    ConsistencyError,
    Divisor,
    NotSingularError,
    ReesAlg,
    Ring,
    TValue,
    blowup_chart,
    diff_closure,
    format_table,
    format_value,
    gamma,
    is_singular_at,
    monomial_case,
    ord_dm,
    probe_grid,
    stratification_report,
    t_fn,
    tau_at,
    tilde,
    w_ord,
)
from suite import members

R = Ring(["x", "y", "z"], QQ)
K = Ring(["X", "Y", "Z"], GF(2))
CUSP = ReesAlg(R, [(R("z^2+(x^2-y^3)^2"), 2)])
KANGAROO = ReesAlg(K, [(K("Z^2+Y^7+Y*X^4"), 2)])


def test_format_value():
    assert format_value((Fraction(1), Fraction(3, 2), INF)) == "(1, 3/2, inf)"
    assert str(TValue(Fraction(2), 1)) == "(2, 1)"


def test_gamma_values():
    assert gamma(CUSP, R.origin()) == (1, 2, Fraction(3, 2))
    for t in (1, 2, 3):
        assert gamma(CUSP, (t ** 3, t ** 2, 0)) == (1, 1, INF)
    assert gamma(ReesAlg(R, [(R("z^2"), 2)]), R.origin()) == (1, INF, INF)
    with pytest.raises(NotSingularError):
        gamma(CUSP, (1, 0, 0))


def test_gamma_is_upper_semicontinuous_along_the_curve():
    origin = gamma(CUSP, R.origin())
    assert all(origin > gamma(CUSP, (t ** 3, t ** 2, 0)) for t in (-2, -1, 1, 2))


def test_gamma_does_not_depend_on_variable_preference():
    for _, D, pts, _ in members():
        for x in pts[:6]:
            values = {gamma(D, x, order) for order in (("z", "w"), ("w", "z"))}
            assert len(values) == 1


def test_ord_dm_levels():
    assert ord_dm(CUSP, R.origin(), 0) == 1
    assert ord_dm(CUSP, R.origin(), 1) == 2
    assert ord_dm(KANGAROO, K.origin(), 1, vars=("Z",)) == 4
    with pytest.raises(ValueError):
        ord_dm(KANGAROO, K.origin(), 1, vars=("Z", "Y"))


def test_ord_dm_is_semicontinuous_on_the_suite():
    """The origin is a limit of t*v along each singular line; its ord_dm is no smaller."""
    for _, D, pts, values in members():
        if D.ring.characteristic:
            continue
        origin = D.ring.origin()
        top = ord_dm(D, origin, 1)
        for v in pts[1:10]:
            line = [D.ring.point([t * c for c in v]) for t in (1, 2, 3, -1)]
            assert all(is_singular_at(D, p) for p in line)
            assert top >= min(ord_dm(D, p, 1) for p in line)


def test_w_ord_and_t_on_the_kangaroo_chart():
    D = diff_closure(KANGAROO)
    B1 = blowup_chart(BasicObject.create(D), ("X", "Y", "Z"), "Y")
    assert w_ord(B1, K.origin()) == 1
    assert t_fn(B1, K.origin()) == TValue(Fraction(1), 0)
    low = BasicObject(ReesAlg(K.drop("Z"), [(K.drop("Z")("Y^3*(Y+X^2)^2"), 1)]),
                      (Divisor("Y", 1),), (Fraction(4), Fraction(2)), ())
    assert w_ord(low, (0, 0)) == 2
    assert t_fn(low, (0, 0)) == TValue(Fraction(2), 1)


def test_monomial_case_witness():
    S = Ring(["x", "y"], QQ)
    B = BasicObject(ReesAlg(S, [(S("x^2*y^4"), 2)]), (Divisor("x", 1), Divisor("y", 2)))
    ok, witness = monomial_case(B, [(0, 1), (1, 0)])
    assert ok
    assert witness["exponents"] == {"x": 2, "y": 4}
    ok, _ = monomial_case(BasicObject(ReesAlg(S, [(S("x^2+y^3"), 2)])))
    assert not ok


def test_tilde_kangaroo():
    T = tilde(KANGAROO, K.origin(), 1)
    assert tau_at(T, K.origin())[0] == 2
    assert [p for p in probe_grid(K) if is_singular_at(T, p)] == [(0, 0, 0)]


def test_tilde_level_zero_is_the_closure_at_simple_points():
    assert tilde(CUSP, R.origin(), 0) == diff_closure(CUSP)


def test_tilde_needs_finite_order():
    with pytest.raises(ConsistencyError):
        tilde(ReesAlg(R, [(R("z^2"), 2)]), R.origin(), 1)


def test_stratification_table():
    rows = stratification_report(diff_closure(CUSP), probe_grid(R, range(-1, 2)))
    assert [r["point"] for r in rows] == [(0, 0, 0), (-1, 1, 0), (1, 1, 0)]
    table = format_table(rows)
    assert table.splitlines()[0].split() == ["point", "ord", "w-ord", "t", "gamma", "tau"]
    assert "(1, 2, 3/2)" in table


def test_max_w_ord_never_increases_along_scripted_blow_ups():
    from reeselim import commute_elimination, eliminate_chain

    D = diff_closure(KANGAROO)
    chain = eliminate_chain(D, K.origin(), ("Z",))
    up, down = commute_elimination(BasicObject.create(D), chain, ("X", "Y", "Z"), "Y")
    for B in (up, down):
        h = B.word_history
        assert all(a >= b for a, b in zip(h, h[1:]))
    D = diff_closure(CUSP)
    B = BasicObject.create(D)
    for _ in range(2):
        B = blowup_chart(B, ("x", "y", "z"), "y")
        h = B.word_history
        assert all(a >= b for a, b in zip(h, h[1:]))


def test_w_ord_equals_ord_without_divisors():
    B = BasicObject.create(diff_closure(CUSP))
    for p in [(0, 0, 0), (1, 1, 0), (8, 4, 0)]:
        assert w_ord(B, p) == 1
