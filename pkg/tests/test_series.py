import pytest
import sympy
from hypothesis import given, strategies as st

from hktoolkit.errors import ParseError
from hktoolkit.fields import QQ, FieldSpec, parse_field
from hktoolkit.series import TruncatedSeries, parse_poly, poly

X, Y, Z = sympy.symbols("x y z")
NAMES = ["x", "y", "z"]


def to_sympy(s):
    return sum(sympy.Rational(str(c)) * X**a[0] * Y**a[1] * Z**a[2] for a, c in s.coeffs.items())


def trunc_sympy(e, D):
    P = sympy.Poly(sympy.expand(e), X, Y, Z)
    return sum(c * X**m[0] * Y**m[1] * Z**m[2] for m, c in P.terms() if sum(m) <= D)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=6,
)


@given(terms, terms, st.integers(2, 7))
def test_multiplication_matches_sympy(a, b, D):
    f = TruncatedSeries.build(a, 3, 0, D)
    g = TruncatedSeries.build(b, 3, 0, D)
    assert sympy.expand(to_sympy(f * g) - trunc_sympy(to_sympy(f) * to_sympy(g), D)) == 0


@given(terms, st.integers(2, 7))
def test_json_and_text_round_trip(a, D):
    f = TruncatedSeries.build(a, 3, 0, D)
    assert TruncatedSeries.from_json(f.to_json()) == f
    if not f.is_zero():
        assert parse_poly(f.to_str(NAMES), NAMES, QQ, D) == f


def test_parse_examples():
    f = poly("x^2 - 3/2*x*y + y^3")
    assert f.n == 2
    assert f.coefficient((1, 1)) == QQ("-3/2")
    assert f.ord() == 2


@pytest.mark.parametrize("text, column", [("x^", 3), ("x + * y", 5), ("2/0*x", 1)])
def test_parse_errors_carry_columns(text, column):
    with pytest.raises(ParseError) as e:
        parse_poly(text, ["x", "y"])
    assert e.value.line == 1
    assert e.value.column >= 1


def test_truncation_flags_mod_trunc():
    f = parse_poly("x + y^5", ["x", "y"], QQ, 3)
    assert not f.exact
    assert f.coeffs == {(1, 0): QQ(1)}


def test_prime_field_arithmetic():
    F = parse_field("fp:5")
    assert F == FieldSpec(5)
    f = parse_poly("3*x + 4*y", ["x", "y"], F, 4)
    assert (f + f).coeffs == {(1, 0): 1, (0, 1): 3}
    assert F("1/2") == 3
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_hasse_derivative_char_p():
    # D_{x^2}(x^4) = C(4,2) x^2 = 6 x^2, which vanishes in characteristic 2 and 3
    for p, expect in ((0, 6), (2, 0), (3, 0), (5, 1)):
        F = parse_field("q" if p == 0 else f"fp:{p}")
        h = parse_poly("x^4", ["x"], F, 6).hasse((2,))
        assert h.coefficient((2,)) == F(expect)
