import pytest
from hypothesis import given, strategies as st

from hktoolkit.diagrams import Diagram, d_of, hs_compare, hs_window
from hktoolkit.errors import EmptyDiagram, NotFiniteType

from oracles import staircase_count

D23 = Diagram.from_exponents([(2, 0), (0, 3)])


def test_vertices_are_minimal():
    assert Diagram.from_exponents([(2, 0), (3, 0), (0, 3)]).vertices == ((2, 0), (0, 3))
    assert Diagram.from_exponents([], 2).is_empty()


def test_locate():
    # 0-based index of the vertex whose subdivision part holds the exponent
    assert D23.locate((2, 3)) == 0
    assert D23.locate((1, 1)) is None
    assert D23.locate((0, 5)) == 1


@pytest.mark.parametrize("verts, monotone, finite", [
    ([(2, 0), (0, 3)], True, True),
    ([(1, 1)], False, False),
    ([(1, 0)], True, True),
    ([(1, 0), (0, 1)], True, True),
])
def test_flags(verts, monotone, finite):
    D = Diagram.from_exponents(verts)
    assert D.is_monotone() == monotone
    assert D.is_finite_type() == finite


def test_infinite_gamma_part_is_reported():
    with pytest.raises(NotFiniteType):
        Diagram.from_exponents([(1, 1)]).gamma_parts
    with pytest.raises(EmptyDiagram):
        Diagram.from_exponents([], 2).gamma_parts


def test_gamma_parts_of_cusp_diagram():
    assert D23.gamma_parts[1] == []
    assert sorted(D23.gamma_parts[2]) == sorted((a, b) for a in range(2) for b in range(3))


def test_d_of_square():
    D = Diagram.from_exponents([(2, 0), (0, 2)])
    assert D.delta_parts.bbar[(1, 0)] == [(2, 0)]
    assert sorted(D.delta_parts.bbar[(2, 1)]) == [(0, 2), (1, 2)]
    assert d_of(D) == 3


def test_hs_profiles_and_compare():
    assert D23.hs_profile(5) == [1, 3, 5, 6, 6, 6]
    D22 = Diagram.from_exponents([(2, 0), (0, 2)])
    assert D22.hs_profile(4) == [1, 3, 4, 4, 4]
    assert hs_compare(D22, D23)[0] == -1
    assert hs_compare(D23, D23)[0] == 0
    assert hs_compare(D23, Diagram.from_exponents([], 2))[0] == -1


vertex_sets = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n).map(tuple), min_size=1, max_size=4)
)


@given(vertex_sets)
def test_hilbert_samuel_matches_enumeration(verts):
    verts = [v for v in verts if any(v)] or [(1,) * len(verts[0])]
    D = Diagram.from_exponents(verts)
    s_max = 6 if D.n <= 3 else 4
    assert D.hs_profile(s_max) == [staircase_count(D.vertices, D.n, s) for s in range(s_max + 1)]


@given(vertex_sets)
def test_partition_certificate_on_finite_type(verts):
    verts = [v for v in verts if any(v)] or [(1,) * len(verts[0])]
    D = Diagram.from_exponents(verts)
    if not D.is_finite_type():
        return
    ok, why = D.partition_certificate(7 if D.n <= 3 else 5)
    assert ok, why
    # each Gamma cell a x N^{n-i} avoids Delta
    for i, A in D.gamma_parts.items():
        for a in A:
            assert a + (0,) * (D.n - i) not in D


@given(vertex_sets)
def test_hs_window_covers_stabilization(verts):
    verts = [v for v in verts if any(v)] or [(1,) * len(verts[0])]
    D = Diagram.from_exponents(verts)
    if not D.is_finite_type():
        return
    s_star = hs_window(D, D)[0]
    assert s_star >= d_of(D)
