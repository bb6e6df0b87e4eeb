import pytest
import sympy
from hypothesis import assume, given, strategies as st

from hktoolkit import exponents as ex
from hktoolkit.errors import DimensionMismatch
from hktoolkit.fields import QQ
from hktoolkit.jacobians import (
    JacobianProblem,
    check_conditions,
    essential_space,
    jr_operator,
    macaulay_quotient_parts,
    macaulay_resultant,
    quotient_dimension,
)
from hktoolkit.series import TruncatedSeries, poly

XY = ["x", "y"]


def form(text, names=XY):
    return poly(text, names, trunc=12)


def test_linear_pair_identity():
    a = [[2, 3], [5, 7]]
    F1 = form("2*x + 3*y")
    F2 = form("5*x + 7*y")
    P = JacobianProblem((F1, F2), ((1, 0), (0, 1)))
    assert P.det(1) == -1
    assert P.det(2) == a[0][0] * P.det(1)


def test_binary_quadratics():
    P = JacobianProblem((form("x^2 - y^2"), form("x^2 + y^2")), ((2, 0), (0, 2)))
    assert P.det(2) == 2
    assert P.det(3) == 4
    rows, first = check_conditions(P)
    assert first is None


def test_resultant_of_common_factor_vanishes():
    assert macaulay_resultant([form("x^2 - x*y"), form("x^2 + x*y")], [2, 2]) == 0


def test_quotient_dimension():
    assert quotient_dimension([form("x^2"), form("y^3")], [2, 3]) == 6
    assert quotient_dimension([form("x^2 - x*y"), form("x^2 + x*y")], [2, 2]) is None


def test_jr_of_cusp():
    val, _ = jr_operator([form("x^2 - y^3").hasse((1, 0))], (0, 0), [1])
    assert val == 2


@pytest.mark.parametrize("text, span", [("x^2 + y^2", 2), ("x^2 + 2*x*y + y^2", 1), ("x^2", 1)])
def test_essential_space(text, span):
    assert len(essential_space(form(text))) == span


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        JacobianProblem((form("x"),), ((1, 0), (0, 1)))


coef = st.integers(-4, 4)


def binary_form(cs, d):
    terms = [((d - i, i), QQ(c)) for i, c in enumerate(cs) if c]
    return TruncatedSeries.build(terms, 2, 0, d, QQ)


def sylvester(c1, c2):
    """Sylvester determinant of two binary forms given by coefficient lists x^d..y^d."""
    d1, d2 = len(c1) - 1, len(c2) - 1
    N = d1 + d2
    rows = [[0] * i + list(c1) + [0] * (N - d1 - 1 - i) for i in range(d2)]
    rows += [[0] * i + list(c2) + [0] * (N - d2 - 1 - i) for i in range(d1)]
    return sympy.Matrix(rows).det()


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_binary_resultant_matches_sylvester(d1, d2, data):
    c1 = data.draw(st.lists(coef, min_size=d1 + 1, max_size=d1 + 1))
    c2 = data.draw(st.lists(coef, min_size=d2 + 1, max_size=d2 + 1))
    assume(any(c1) and any(c2))
    unit = sylvester([1] + [0] * d1, [0] * d2 + [1])
    expect = sylvester(c1, c2) / unit
    F, G = binary_form(c1, d1), binary_form(c2, d2)
    res = macaulay_resultant([F, G], [d1, d2])
    assert sympy.Rational(str(res)) == expect
    J, minor = macaulay_quotient_parts([F, G], [d1, d2])
    assert J == res * minor
    assert (res != 0) == (quotient_dimension([F, G], [d1, d2]) == d1 * d2)


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_linear_identity_property(a):
    F1 = TruncatedSeries.build([((1, 0), a[0]), ((0, 1), a[1])], 2, 0, 4, QQ)
    F2 = TruncatedSeries.build([((1, 0), a[2]), ((0, 1), a[3])], 2, 0, 4, QQ)
    assume(a[0] != 0 and a[3] != 0)
    P = JacobianProblem((F1, F2), ((1, 0), (0, 1)))
    assert P.det(2) == a[0] * P.det(1)


def test_ternary_resultant_of_diagonal_forms():
    names = ["x", "y", "z"]
    fs = [poly(t, names, trunc=6) for t in ("x^2", "y^2", "z")]
    assert macaulay_resultant(fs, [2, 2, 1]) == 1
    assert quotient_dimension(fs, [2, 2, 1]) == 4
    assert ex.degree((1, 2)) == 3
