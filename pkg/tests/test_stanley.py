import random

from hypothesis import given, strategies as st

from hktoolkit.series import poly
from hktoolkit.stanley import (
    GradedModule,
    brute_hilbert,
    check_basis,
    entry,
    hilbert_from_basis,
    majorizes,
    phi,
    stabilization_check,
    stanley_decomposition,
)
from hktoolkit.suite import random_module

XY = ["x", "y"]


def quotient(*texts, names=XY):
    return GradedModule.from_text(1, [[t] for t in texts], names)[0]


def test_phi():
    assert [phi(m, 2) for m in range(-1, 4)] == [0, 1, 3, 6, 10]
    assert phi(3, 0) == 1


def test_x_squared():
    B = stanley_decomposition(quotient("x^2"))
    assert [hilbert_from_basis(B, s) for s in range(8)] == [2 * s + 1 for s in range(8)]
    assert B.d() == 1


def test_artinian_quotient():
    B = stanley_decomposition(quotient("x^2", "x*y", "y^2"))
    assert B.profile() == [(0, 0), (0, 1), (0, 1)]
    assert [hilbert_from_basis(B, s) for s in range(5)] == [1, 3, 3, 3, 3]


def test_empty_basis_has_zero_hilbert():
    assert hilbert_from_basis([], 5) == 0


def test_stabilization_examples():
    M = quotient("x^2")
    one, x_plus_y, y = entry([{(0, 0): 1}], 1), entry([{(1, 0): 1, (0, 1): 1}], 1), entry([{(0, 1): 1}], 1)
    rep = stabilization_check(M, [one, x_plus_y], d=1, oracle_bound=7)
    assert rep["threshold_pass"] and rep["oracle_pass"] and not rep["contradiction"]
    rep = stabilization_check(M, [one, y], d=1, oracle_bound=7)
    assert not rep["threshold_pass"] and rep["threshold_failure_degree"] == 1


def test_majorizes_with_tails():
    M = quotient("x^2", "y^3")
    B = stanley_decomposition(M)
    assert majorizes(B, B.entries, M, 6)
    tails = []
    for e in B.entries:
        el = [dict(c) for c in e.element]
        a = next(iter(el[0]))
        if sum(a) > 0 and a[1] < 2:
            # add a higher monomial of the same degree inside the staircase
            b = (a[0] - 1, a[1] + 1) if a[0] else a
            el[0][b] = el[0].get(b, 0) + 1
        tails.append(entry(el, e.ring_index))
    assert majorizes(B, tails, M, 6)
    assert not majorizes(B, B.entries[:-1], M, 6)


def test_module_of_rank_two():
    M, _ = GradedModule.from_text(2, [["x", "y"], ["y^2", "0"]], XY)
    B = stanley_decomposition(M)
    assert check_basis(B.module, B.entries, B.bound)[0]
    assert [hilbert_from_basis(B, s) for s in range(6)] == [brute_hilbert(M, s) for s in range(6)]


@given(st.integers(0, 10**6))
def test_random_modules(seed):
    rng = random.Random(seed)
    M = random_module(rng)
    B = stanley_decomposition(M, seed=seed)
    for s in range(B.bound + 1):
        assert hilbert_from_basis(B, s) == brute_hilbert(M, s)
    rep = stabilization_check(B.module, B.entries, d=B.d())
    assert rep["threshold_pass"] and rep["oracle_pass"]


def test_quotient_ring_constructor():
    M = GradedModule.quotient_ring([poly("x^2", XY)])
    assert [brute_hilbert(M, s) for s in range(4)] == [1, 3, 5, 7]
