from math import comb

import pytest
from hypothesis import given, strategies as st

from hktoolkit import exponents as ex
from hktoolkit.errors import InvalidOrder, ParseError


def test_monomial_counts():
    for n in range(1, 5):
        for d in range(6):
            mons = list(ex.monomials_of_degree(n, d))
            assert len(mons) == comb(d + n - 1, n - 1)
            assert len(set(mons)) == len(mons)
            assert len(list(ex.monomials_up_to(n, d))) == comb(d + n, n)


def test_parse_order_and_text():
    T = ex.parse_order("x1+x2; x2", 2)
    assert T.forms == ((1, 1), (0, 1))
    assert T.total and T.normalized and T.positive
    assert ex.parse_order(T.to_text(), 2) == T
    assert ex.parse_order("1/2*x1 + x2", 2).forms == ((1, 2),)


@pytest.mark.parametrize("bad", ["x1+", "x3", "y1", ";"])
def test_parse_order_errors(bad):
    with pytest.raises(ParseError):
        ex.parse_order(bad, 2)


def test_empty_and_negative_forms_rejected():
    with pytest.raises(InvalidOrder):
        ex.MonomialOrder(())
    with pytest.raises(InvalidOrder):
        ex.MonomialOrder(((1, -1),))


def test_standard_order_is_monotone():
    for n in range(1, 5):
        T = ex.standard_order(n)
        assert T.classify() == {"positive": True, "normalized": True, "total": True, "monotone": True}


exps = st.lists(st.integers(0, 5), min_size=3, max_size=3).map(tuple)
forms = st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple), min_size=1, max_size=3)


@given(forms, exps, exps)
def test_completion_is_total_and_refines(fs, a, b):
    if all(not any(f) for f in fs):
        fs = fs + [(1, 1, 1)]
    T = ex.MonomialOrder(tuple(fs))
    C = T.completed()
    assert C.total
    # completion only breaks ties of T
    if T.compare(a, b) != 0:
        assert C.compare(a, b) == T.compare(a, b)
    # a total order separates distinct exponents
    assert (C.compare(a, b) == 0) == (a == b)


@given(exps, exps, exps)
def test_orders_are_additive(a, b, c):
    T = ex.standard_order(3)
    assert T.compare(a, b) == T.compare(ex.add(a, c), ex.add(b, c))
