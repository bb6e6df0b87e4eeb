import random

import pytest
from hypothesis import given, strategies as st

from hktoolkit.division import (
    DivisionProblem,
    check_result,
    fixed_point_divide,
    generalized_divide,
    graded_divide,
    prepare,
)
from hktoolkit.errors import ZeroDivisor
from hktoolkit.fields import QQ
from hktoolkit.series import poly
from hktoolkit.suite import division_problems

XY = ["x", "y"]


def p(text, names=XY, params=(), D=10):
    return poly(text, names, trunc=D, params=params)


def test_cusp_division():
    P = DivisionProblem.make([p("x^2 - y^3")])
    res = fixed_point_divide(P, p("x^2"))
    assert res.h[0] == p("1")
    assert res.r == p("y^3")
    assert check_result(P, p("x^2"), res)[0]


def test_self_division():
    fs = [p("x^2 - y^3"), p("x*y")]
    P = DivisionProblem.make(fs)
    res = generalized_divide(P, P.fs[1])
    assert [q.is_zero() for q in res.h] == [True, False]
    assert res.r.is_zero()


def test_weierstrass_example():
    # n = 1 with the parameter x: t^3 = t*(t^2 - x) + t*x
    names = ["t", "x"]
    P = DivisionProblem.make([p("t^2 - x", names, ("x",))])
    g = p("t^3", names, ("x",))
    res = generalized_divide(P, g)
    assert res.h[0] == p("t", names, ("x",))
    assert res.r == p("t*x", names, ("x",))


def test_monomial_divisors():
    names = ["u1", "u2"]
    P = DivisionProblem.make([p("u1^2", names), p("u2^2", names)])
    res = generalized_divide(P, p("u1*u2", names))
    assert all(q.is_zero() for q in res.h) and res.r == p("u1*u2", names)
    res = generalized_divide(P, p("u1^2*u2^2", names))
    assert res.h[0] == p("u2^2", names) and res.h[1].is_zero() and res.r.is_zero()


def test_parameter_division_graded():
    names = ["u1", "u2", "v"]
    P = DivisionProblem.make([p("u1^2 + v*u2^2", names, ("v",)), p("u2^2", names, ("v",))])
    g = p("u1^2", names, ("v",))
    res = graded_divide(P, g)
    assert res.h[0] == p("1", names, ("v",))
    assert res.h[1] == p("-v", names, ("v",))
    assert res.r.is_zero()
    assert check_result(P, g, res)[0]


def test_prepare():
    (f,), _ = prepare(DivisionProblem.make([p("x^2 + x^3", ["x"])]))
    assert f == p("x^2", ["x"])
    (f,), _ = prepare(DivisionProblem.make([p("x^2 - y^3")]))
    assert f == p("x^2 - y^3")


def test_zero_divisor_rejected():
    with pytest.raises(ZeroDivisor):
        DivisionProblem.make([p("x - x")])


def test_remainder_fixed_on_gamma():
    P = DivisionProblem.make([p("x^2 - y^3")])
    g = p("x*y^4 + 3*y^2 - x")
    res = generalized_divide(P, g)
    assert res.r == g and all(q.is_zero() for q in res.h)


@given(st.integers(0, 10**6))
def test_random_problems_identity_and_uniqueness(seed):
    P, g = division_problems(seed, count=1)[0]
    a = fixed_point_divide(P, g, "batch")
    b = fixed_point_divide(P, g, "single")
    assert check_result(P, g, a)[0]
    assert (a.h, a.r) == (b.h, b.r)
    if P.n_param:
        c = graded_divide(P, g)
        assert (c.h, c.r) == (a.h, a.r)


def test_linearity_of_division():
    rng = random.Random(5)
    for P, g in division_problems(3, count=15):
        _, g2 = division_problems(rng.randint(0, 999), count=1)[0]
        if g2.n_main != g.n_main or g2.n_param != g.n_param:
            continue
        c = QQ(rng.randint(1, 5))
        r1 = generalized_divide(P, g).r
        r2 = generalized_divide(P, g2.with_trunc(P.trunc)).r
        r = generalized_divide(P, g + g2.with_trunc(P.trunc).scale(c)).r
        assert r == (r1 + r2.scale(c))
