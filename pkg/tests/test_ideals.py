from hypothesis import given, strategies as st

from hktoolkit import ideals as P
from hktoolkit.fields import QQ, FieldSpec
from hktoolkit.series import parse_poly

from oracles import poly_mul


def pol(text, names=("x", "y"), F=QQ):
    return dict(parse_poly(text, list(names), F, 64).coeffs)


def test_unit_and_membership():
    assert P.is_unit_ideal([pol("x"), pol("x + 1")], 2)
    assert not P.is_unit_ideal([pol("x"), pol("y")], 2)
    assert P.contains([pol("x^2 - y^3"), pol("y")], pol("x^2"), 2)
    assert not P.contains([pol("x^2")], pol("x"), 2)
    assert P.radical_contains([pol("x^2")], pol("x"), 2)


def test_prime_field_unit_ideal():
    F = FieldSpec(3)
    # 3 = 0 in F_3, so (x + 3) = (x) is proper
    assert not P.is_unit_ideal([pol("x + 3", F=F)], 2, F)


def test_derivative_ideal_of_cusp():
    D = P.derivative_ideal([pol("x^2 - y^3")], 1, 2)
    assert P.same_zero_set(D, [pol("x"), pol("y^2")], 2)
    assert P.is_unit_ideal(P.derivative_ideal([pol("x^2")], 2, 2), 2)
    assert not P.is_unit_ideal(P.derivative_ideal([pol("x^2")], 1, 2), 2)


def test_blowup_map_and_substitution():
    f = pol("x^2 - y^3")
    assert P.blowup_map(f, [0, 1], 1) == pol("x^2*y^2 - y^3")
    images = [P.add(P.var(2, 0), P.const(2, 1)), None]
    assert P.substitute(pol("x^2"), images, 2) == pol("x^2 + 2*x + 1")
    assert P.order_at(f, (1, 1)) == 1
    assert P.evaluate(f, (2, 1)) == 3


small = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=4)


@given(small, small)
def test_mul_matches_reference(a, b):
    a = P.clean({k: QQ(v) for k, v in a.items()})
    b = P.clean({k: QQ(v) for k, v in b.items()})
    assert P.mul(a, b) == poly_mul(a, b)


@given(st.lists(small, min_size=1, max_size=4))
def test_span_basis_preserves_span(ps):
    ps = [P.clean({k: QQ(v) for k, v in p.items()}) for p in ps]
    B = P.span_basis(ps)
    # every input is a combination of the basis: adding it does not grow the span
    for p in ps:
        assert len(P.span_basis(B + [p])) == len(B)
    assert len(B) <= len([p for p in ps if p])
