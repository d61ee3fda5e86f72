import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeselim import (
    GF,
    QQ,
    BasicObject,
    Chart,
    CommutationError,
    Divisor,
    NotDivisibleError,
    ReesAlg,
    Ring,
    blowup_chart,
    center_order,
    check_permissible,
    commute_elimination,
    diff_closure,
    dumps_lineage,
    eliminate_chain,
    pair_transform,
    pullback_chart,
    strict_transform,
)
from strategies import polys, rings

R = Ring(["x", "y", "z"], QQ)
K = Ring(["X", "Y", "Z"], GF(2))


def test_pullback_in_chart():
    chart = Chart(("x", "y", "z"), "y")
    assert pullback_chart(R("x+z"), chart) == R("x*y+z*y")
    assert pullback_chart(R("y"), chart) == R("y")


def test_first_chart_of_the_double_cusp():
    f = R("z^2+(x^2-y^3)^2")
    assert pair_transform(f, 2, Chart(("x", "y", "z"), "y")) == R("z^2+y^2*(x^2-y)^2")
    assert strict_transform(f, Chart(("x", "y", "z"), "y")) == R("z^2+y^2*(x^2-y)^2")


def test_pair_transform_needs_order():
    with pytest.raises(NotDivisibleError):
        pair_transform(R("z^2+x"), 2, Chart(("x", "z"), "x"))


def test_chart_variable_must_be_in_center():
    with pytest.raises(ValueError):
        Chart(("x", "y"), "z")


def test_check_permissible_reports():
    ok, report = check_permissible(ReesAlg(R, [(R("z^2+x"), 2)]), ("x", "z"))
    assert not ok and "order 1" in report[0]
    assert check_permissible(ReesAlg(R, [(R("z^2+x^2"), 2)]), ("x", "z")) == (True, [])


def test_blowup_divisors_and_history():
    D = diff_closure(ReesAlg(K, [(K("Z^2+Y^7+Y*X^4"), 2)]))
    B = BasicObject.create(D)
    assert B.word_history == (1,)
    B1 = blowup_chart(B, ("X", "Y", "Z"), "Y")
    assert B1.divisors == (Divisor("Y", 1),)
    assert B1.stage == 1
    assert len(B1.word_history) == 2
    B2 = blowup_chart(B1, ("X", "Y", "Z"), "Y")
    assert B2.divisors == (Divisor("Y", 2),)
    assert Divisor("Y", 1).age(1) == "old" and Divisor("Y", 2).age(1) == "new"


def test_commutation_refuses_eliminated_chart():
    D = diff_closure(ReesAlg(K, [(K("Z^2+Y^7+Y*X^4"), 2)]))
    chain = eliminate_chain(D, K.origin(), ("Z",))
    with pytest.raises(CommutationError):
        commute_elimination(BasicObject.create(D), chain, ("X", "Y", "Z"), "Z")
    with pytest.raises(CommutationError):
        commute_elimination(BasicObject.create(D), chain, ("X", "Y"), "Y")


def test_lineage_json():
    D = diff_closure(ReesAlg(K, [(K("Z^2+Y^7+Y*X^4"), 2)]))
    B = BasicObject.create(D)
    B1 = blowup_chart(B, ("X", "Y", "Z"), "Y")
    B2 = blowup_chart(B, ("X", "Y", "Z"), "X")
    tree = json.loads(dumps_lineage([B, B1, B2]))
    assert len(tree) == 1
    assert sorted(c["chart"] for c in tree[0]["children"]) == ["X", "Y"]


centers = st.sets(st.sampled_from(["x", "y", "z"]), min_size=1).map(lambda s: tuple(sorted(s)))


@settings(max_examples=60, deadline=None)
@given(rings.flatmap(lambda R: polys(R, 5).map(lambda f: (R, f))), centers, st.data())
def test_weak_transform_reconstructs_total_transform(args, center, data):
    R, f = args
    if f.is_zero():
        return
    b = center_order(f, center)
    chart = Chart(center, data.draw(st.sampled_from(center)))
    E = R.gen(chart.chart_var)
    h = pair_transform(f, b, chart)
    assert h * E ** b == pullback_chart(f, chart)
    s = strict_transform(f, chart)
    assert s.exact_div(E) is None
    assert h.divide_out(E)[1] == s


@settings(max_examples=30, deadline=None)
@given(rings.flatmap(lambda R: polys(R, 4).map(lambda f: (R, f))), centers, st.data())
def test_charts_agree_off_the_divisor(args, center, data):
    """Total transforms of a product are products of total transforms."""
    R, f = args
    g = data.draw(polys(R, 3))
    chart = Chart(center, data.draw(st.sampled_from(center)))
    assert pullback_chart(f * g, chart) == pullback_chart(f, chart) * pullback_chart(g, chart)
