import random

import pytest
from hypothesis import given, settings, strategies as st

from hktoolkit import ideals as P
from hktoolkit.errors import (
    EmptyCosupport,
    GuardExceeded,
    InadmissibleCenter,
    InvalidCenter,
    LimitExceeded,
    NoTangentDirection,
    UnsupportedCenter,
)
from hktoolkit.resolution import (
    MarkedIdeal,
    coefficient_capacitor,
    companion_ideal,
    controlled_transform,
    cosupport,
    cosupport_empty,
    in_cosupport,
    monomial_center,
    resolve_marked,
    strict_transform,
    tangent_direction,
    verify_resolution,
)

XY = ["x", "y"]


def marked(text, mu, names=XY, E=()):
    return MarkedIdeal.parse(text, mu, names, E)


def pol(text, names=XY):
    return marked(text, 1, names).gens[0]


# --- building blocks ----------------------------------------------------------------

def test_cosupports():
    M = marked("x^2 - y^3", 2)
    assert P.same_zero_set(cosupport(M), [pol("x"), pol("y^2")], 2)
    assert in_cosupport(M, (0, 0)) and not in_cosupport(M, (1, 1))
    assert not cosupport_empty([pol("x")], 1, 2)
    assert cosupport_empty([pol("x")], 2, 2)


def test_controlled_transforms_of_cusp():
    f = [pol("x^2 - y^3")]
    # chart index 1: x = x'y', y = y'
    assert controlled_transform(f, 2, [0, 1], 1) == [pol("x^2 - y")]
    assert controlled_transform(f, 2, [0, 1], 0) == [pol("1 - x*y^3")]
    assert strict_transform(f, [0, 1], 1) == [pol("x^2 - y")]


def test_controlled_transform_of_monomial():
    assert controlled_transform([pol("x^3*y^2")], 4, [0, 1], 1) == [pol("x^3*y")]
    with pytest.raises(InadmissibleCenter):
        controlled_transform([pol("x^3*y^2")], 4, [0], 0)


def test_companion_ideal():
    M = marked("x^4 + x^3*y^2", 5, E=["x"])
    O, mu_O, tag, o = companion_ideal(M)
    assert (tag, o) == ("maximal-order", 1)
    assert P.contains(O, pol("x^3"), 2)
    assert P.contains(O, P.power(pol("x + y^2"), 4, 2), 2)
    O, mu_O, tag, o = companion_ideal(marked("x^2 + y^2", 2))
    assert (mu_O, tag) == (2, "maximal-order")
    assert companion_ideal(marked("x^3*y^2", 4, E=["x", "y"]))[2] == "monomial"


def test_capacitor_keeps_cosupport():
    f = [pol("x^2 - y^3")]
    C, c = coefficient_capacitor(f, 2, 2)
    assert c == 2
    assert P.same_zero_set(P.derivative_ideal(C, c - 1, 2), P.derivative_ideal(f, 1, 2), 2)
    with pytest.raises(GuardExceeded):
        coefficient_capacitor([pol("x^4")], 4, 2)


def test_tangent_direction():
    k, c, g = tangent_direction([pol("x^2 - y^3")], 2, 2, [0, 1])
    # D^1 is stored as a reduced span, so the x-generator is normalized
    assert (k, c, g) == (0, 1, {})
    with pytest.raises(NoTangentDirection):
        tangent_direction([pol("x^3*y^2")], 2, 2, [0, 1])


def test_monomial_centers():
    assert monomial_center([(0, 3), (1, 2)], 4) == [0, 1]
    assert monomial_center([(0, 5)], 4) == [0]
    with pytest.raises(EmptyCosupport):
        monomial_center([(0, 3)], 4)


# --- the driver ------------------------------------------------------------------------

def test_cusp():
    M = marked("x^2 - y^3", 2)
    T = resolve_marked(M)
    assert T.status == "resolved" and T.blowups == 1
    assert T.charts[0].center == [0, 1]
    rep = verify_resolution(T, M)
    assert rep["passed"], rep["failures"]
    assert rep["ord_N"]["0"] == 2
    assert all(v is None or v <= 1 for k, v in rep["ord_N"].items() if k != "0")


def test_cusp_corrupted_center_is_flagged():
    M = marked("x^2 - y^3", 2)
    rep = verify_resolution(resolve_marked(M), M, corrupt={0: [0]})
    assert not rep["passed"]
    assert not rep["checks"]["centers_in_cosupport"]


def test_smooth_hypersurface():
    T = resolve_marked(marked("x", 1))
    assert T.blowups == 1 and T.charts[0].center == [0]


def test_monomial_case():
    M = marked("x^3*y^2", 4, E=["x", "y"])
    T = resolve_marked(M)
    assert T.max_depth() == 2 and all(c.depth <= 2 for c in T.leaves())
    assert verify_resolution(T, M)["passed"]


def test_umbrella():
    names = ["x", "y", "z"]
    M = marked("x^2 - z*y^2", 2, names)
    T = resolve_marked(M, names=names)
    assert T.status == "resolved"
    rep = verify_resolution(T, M)
    assert rep["passed"], rep["failures"]
    assert all(rep["checks"][k] for k in ("bennett", "normal_flatness", "center_in_stratum"))


def test_limits():
    with pytest.raises(LimitExceeded) as e:
        resolve_marked(marked("x^2 - z*y^2", 2, ["x", "y", "z"]), max_blowups=1)
    assert e.value.trace is not None and e.value.trace.status == "limit-exceeded"


def test_zero_ideal_without_room():
    with pytest.raises((InvalidCenter, ValueError)):
        resolve_marked(MarkedIdeal([{}], 1, 2))


def test_trace_json_is_stable():
    M = marked("x^2 - y^3", 2)
    assert resolve_marked(M).to_json() == resolve_marked(M).to_json()
    assert "x-chart" in resolve_marked(M).summary()


SCOPE = (GuardExceeded, UnsupportedCenter, NoTangentDirection, LimitExceeded)


@settings(max_examples=12)
@given(st.integers(0, 10**6))
def test_random_plane_curves(seed):
    rng = random.Random(seed)
    terms = []
    for _ in range(rng.randint(1, 3)):
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        if 2 <= a + b <= 5:
            terms.append(f"{rng.choice([1, -1, 2])}*x^{a}*y^{b}")
    if not terms:
        terms = ["x^2"]
    text = " + ".join(terms)
    M = marked(text, rng.randint(1, 2))
    if not M.gens:
        # the terms cancelled: the zero ideal has no admissible center
        with pytest.raises(InvalidCenter):
            resolve_marked(M)
        return
    try:
        T = resolve_marked(M, max_blowups=24, max_charts=96)
    except SCOPE:
        return
    assert T.status == "resolved"
    rep = verify_resolution(T, M)
    assert rep["passed"], (text, rep["failures"])
