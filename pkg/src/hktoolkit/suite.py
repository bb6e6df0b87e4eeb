"""Acceptance suite: eight deterministic criteria, each returning a JSON-able
report {"id", "name", "passed", "details"}.

Random instances come from ``random.Random(seed * 1000 + criterion)`` so the
whole report is a pure function of the seed.  Wall-clock times are kept out
of the JSON (they are returned separately) so that repeated runs serialize to
identical bytes.
"""

import hashlib
import json
import random
import time
from itertools import product
from math import prod

from . import exponents as ex
from .diagrams import Diagram
from .division import DivisionProblem, check_result, fixed_point_divide, graded_divide
from .fields import QQ
from .jacobians import JacobianProblem, macaulay_quotient_parts, macaulay_resultant, quotient_dimension
from .linalg import det
from .resolution import MarkedIdeal, resolve_marked, verify_resolution
from .series import TruncatedSeries, poly
from .stanley import (
    GradedModule,
    brute_hilbert,
    entry,
    hilbert_from_basis,
    stabilization_check,
    stanley_decomposition,
)
from .stdbasis import IdealPresentation, check_samuel_basis, hilbert_samuel_at, hs_rank_oracle, samuel_stratum_probe

SCHEMA = "hktoolkit.suite/1"
RESOLUTION_BUDGET = 10.0


def _rng(seed, k):
    return random.Random(seed * 1000 + k)


def _coef(rng):
    return rng.choice([-3, -2, -1, 1, 2, 3, QQ(1) / 2, QQ(-2) / 3])


# --- 1. division --------------------------------------------------------------------------

def _random_divisor(rng, n, m, D):
    nv = n + m
    d = rng.randint(1, 3)
    alpha = tuple(rng.choice(list(ex.monomials_of_degree(n, d))))
    terms = {alpha + (0,) * m: QQ(1)}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 3) for _ in range(nv))
        if sum(e) < d or sum(e) > D:
            continue
        terms[e] = terms.get(e, 0) + _coef(rng)
    terms = [(a, c) for a, c in terms.items() if c != 0]
    return TruncatedSeries.build(terms, n, m, D, QQ)


def _random_dividend(rng, n, m, D):
    nv = n + m
    terms = {}
    for _ in range(rng.randint(2, 8)):
        e = tuple(rng.randint(0, 4) for _ in range(nv))
        if sum(e) <= D:
            terms[e] = terms.get(e, 0) + _coef(rng)
    terms = [(a, c) for a, c in terms.items() if c != 0] or [((0,) * nv, QQ(1))]
    return TruncatedSeries.build(terms, n, m, D, QQ)


def division_problems(seed=0, count=200, D=10):
    rng = _rng(seed, 1)
    out = []
    while len(out) < count:
        n = rng.randint(1, 3)
        m = rng.randint(0, 1)
        fs = [_random_divisor(rng, n, m, D) for _ in range(rng.randint(1, 3))]
        if any(f.at_param_zero().is_zero() for f in fs):
            continue
        P = DivisionProblem.make(fs, trunc=D)
        # uniqueness needs ord f_i = |alpha_i| (no lower-degree parameter terms)
        if any(f.ord() != sum(a) for f, a in zip(P.fs, P.alphas)):
            continue
        out.append((P, _random_dividend(rng, n, m, D)))
    return out


def criterion_division(seed=0, count=200):
    failures = []
    for k, (P, g) in enumerate(division_problems(seed, count)):
        a = fixed_point_divide(P, g, "batch")
        b = fixed_point_divide(P, g, "single")
        results = [a, b]
        if P.n_param:
            results.append(graded_divide(P, g))
        ok = all(check_result(P, g, r)[0] for r in results)
        same = all(r.h == a.h and r.r == a.r for r in results)
        if not (ok and same):
            failures.append({"instance": k, "contracts": ok, "unique": same})
    return {"instances": count, "failures": failures}, not failures


# --- 2. diagrams --------------------------------------------------------------------------

def random_finite_type(rng, n):
    while True:
        verts = [tuple(rng.randint(0, 4) for _ in range(n)) for _ in range(rng.randint(1, 5))]
        verts = [v for v in verts if sum(v) > 0]
        if not verts:
            continue
        D = Diagram.from_exponents(verts, n)
        if D.is_finite_type():
            return D


def gamma_partition_brute(D, bound):
    """Every alpha with |alpha| <= bound outside Delta lies in exactly one cell
    a x N^{n-j} (a in A_j), and no point of Delta lies in a cell."""
    n = D.n
    cells = [(j, a) for j, A in D.gamma_parts.items() for a in A]
    for s in range(bound + 1):
        for al in ex.monomials_of_degree(n, s):
            hits = sum(1 for j, a in cells if al[:j] == tuple(a))
            if (al in D and hits) or (al not in D and hits != 1):
                return False, list(al)
    return True, None


def criterion_diagrams(seed=0, count=100, bound=10):
    rng = _rng(seed, 2)
    failures = []
    for k in range(count):
        D = random_finite_type(rng, rng.randint(1, 4))
        ok1, why1 = D.partition_certificate(bound)
        ok2, why2 = gamma_partition_brute(D, bound)
        finite = all(isinstance(A, (list, tuple)) for A in D.gamma_parts.values())
        if not (ok1 and ok2 and finite):
            failures.append({"instance": k, "vertices": [list(v) for v in D.vertices],
                             "delta_partition": why1, "gamma_partition": why2})
    return {"instances": count, "bound": bound, "failures": failures}, not failures


# --- 3. Hilbert-Samuel two ways -----------------------------------------------------------

def random_ideal(rng, n, max_deg=4):
    gens = []
    for _ in range(rng.randint(1, 3)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, max_deg)
            e = rng.choice(list(ex.monomials_of_degree(n, d)))
            terms[e] = terms.get(e, 0) + _coef(rng)
        terms = [(a, c) for a, c in terms.items() if c != 0]
        if terms:
            gens.append(TruncatedSeries.build(terms, n, 0, max_deg, QQ))
    return IdealPresentation(tuple(gens)) if gens else random_ideal(rng, n, max_deg)


def criterion_hilbert_samuel(seed=0, count=10, s_max=8):
    rng = _rng(seed, 3)
    rows, ok = [], True
    for k in range(count):
        I = random_ideal(rng, rng.randint(1, 3))
        a = hilbert_samuel_at(I, None, s_max)
        b = hs_rank_oracle(I, None, s_max)
        rows.append({"instance": k, "diagram": a, "oracle": b, "agree": a == b})
        ok &= a == b
    cusp = IdealPresentation((poly("x^2 - y^3", ["x", "y"], trunc=s_max),))
    H = hilbert_samuel_at(cusp, None, s_max)
    closed = H == [2 * s + 1 for s in range(s_max + 1)]
    return {"ideals": rows, "cusp": H, "cusp_closed_form": closed}, ok and closed


# --- 4. Stanley bases ---------------------------------------------------------------------

def random_module(rng):
    n = rng.randint(1, 3)
    k = rng.choice([1, 1, 2])
    rels = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(1, 3)
        rel = []
        for _c in range(k):
            comp = {}
            if rng.random() < 0.7:
                for _ in range(rng.randint(1, 2)):
                    e = rng.choice(list(ex.monomials_of_degree(n, d)))
                    comp[e] = comp.get(e, 0) + _coef(rng)
            rel.append({a: c for a, c in comp.items() if c != 0})
        if any(rel):
            rels.append(tuple(rel))
    if not rels:
        return random_module(rng)
    return GradedModule(n, k, tuple(rels), QQ)


def _perturbed(rng, B):
    """Candidate generators: the basis with random same-degree tails in lower rings."""
    M = B.module
    out = []
    for e in B.entries:
        el = [dict(c) for c in e.element]
        for _ in range(rng.randint(0, 2)):
            c = rng.randrange(M.k)
            t = e.degree - M.gen_degrees[c]
            if t < 0:
                continue
            a = rng.choice(list(ex.monomials_of_degree(M.n, t)))
            el[c][a] = el[c].get(a, 0) + _coef(rng)
            el[c] = {b: v for b, v in el[c].items() if v != 0}
        if not any(el):
            el = [dict(c) for c in e.element]
        out.append(entry(el, e.ring_index, M.gen_degrees))
    if out and rng.random() < 0.3:
        out.pop(rng.randrange(len(out)))
    return out


def criterion_stanley(seed=0, count=50):
    rng = _rng(seed, 4)
    hilbert_fail, oracle_fail, threshold_pass = [], [], 0
    for k in range(count):
        M = random_module(rng)
        B = stanley_decomposition(M, seed=k)
        for s in range(B.bound + 1):
            if hilbert_from_basis(B, s) != brute_hilbert(B.module, s):
                hilbert_fail.append({"instance": k, "s": s})
                break
        rep = stabilization_check(B.module, _perturbed(rng, B), d=B.d())
        threshold_pass += rep["threshold_pass"]
        if rep["contradiction"]:
            oracle_fail.append({"instance": k, **rep})
    R, _ = GradedModule.from_text(1, [["x^2"]], ["x", "y"])
    B = stanley_decomposition(R)
    Hx2 = [hilbert_from_basis(B, s) for s in range(8)]
    closed = Hx2 == [2 * s + 1 for s in range(8)]
    details = {"instances": count, "hilbert_failures": hilbert_fail, "oracle_failures": oracle_fail,
               "threshold_passes": threshold_pass, "x2_hilbert": Hx2, "x2_closed_form": closed}
    return details, not hilbert_fail and not oracle_fail and closed


# --- 5. Macaulay identities ---------------------------------------------------------------

def _random_form(rng, k, d, pool=(-3, -2, -1, 0, 1, 2, 3)):
    terms = [(a, QQ(rng.choice(pool))) for a in ex.monomials_of_degree(k, d)]
    terms = [(a, c) for a, c in terms if c != 0] or [(ex.unit(k, 0, d), QQ(1))]
    return TruncatedSeries.build(terms, k, 0, d, QQ)


def _product(f, g):
    out = {}
    for a, c in f.coeffs.items():
        for b, e in g.coeffs.items():
            key = ex.add(a, b)
            out[key] = out.get(key, 0) + c * e
    terms = [(a, c) for a, c in out.items() if c != 0]
    deg = max(sum(a) for a, _ in terms)
    return TruncatedSeries.build(terms, f.n, 0, deg, QQ)


def sylvester_resultant(F, G, d1, d2):
    """Binary resultant from the Sylvester matrix, normalized by Res(x^d1, y^d2) = 1."""
    def coeffs(H, d):
        return [H.coefficient((d - i, i)) for i in range(d + 1)]

    def syl(f, g):
        N = d1 + d2
        rows = []
        for i in range(d2):
            rows.append([0] * i + f + [0] * (N - d1 - 1 - i))
        for i in range(d1):
            rows.append([0] * i + g + [0] * (N - d2 - 1 - i))
        return det(rows, QQ)

    ref = syl([QQ(1)] + [QQ(0)] * d1, [QQ(0)] * d2 + [QQ(1)])
    return syl(coeffs(F, d1), coeffs(G, d2)) / ref


def macaulay_systems(seed=0, count=20):
    rng = _rng(seed, 5)
    out = []
    for t in range(count):
        k = 2 if t % 2 == 0 else 3
        if t % 4 == 2:
            # binary forms sharing a linear factor: resultant zero, infinite quotient
            degs = [rng.randint(2, 3), 2]
            l = _random_form(rng, 2, 1)
            forms = [_product(l, _random_form(rng, 2, d - 1)) for d in degs]
        else:
            degs = [rng.randint(1, 3 if k == 2 else 2) for _ in range(k)]
            forms = [_random_form(rng, k, d) for d in degs]
        out.append((forms, degs))
    return out


def criterion_macaulay(seed=0, points=20, systems=20):
    rng = _rng(seed, 50)
    lin_fail = []
    for t in range(points):
        a = [[QQ(rng.randint(-9, 9)) for _ in range(2)] for _ in range(2)]
        F1 = TruncatedSeries.build([((1, 0), a[0][0]), ((0, 1), a[0][1])], 2, 0, 4, QQ)
        F2 = TruncatedSeries.build([((1, 0), a[1][0]), ((0, 1), a[1][1])], 2, 0, 4, QQ)
        P = JacobianProblem((F1, F2), ((1, 0), (0, 1)))
        if P.det(2) != a[0][0] * P.det(1):
            lin_fail.append({"point": t})
    rows, ok = [], not lin_fail
    for t, (forms, degs) in enumerate(macaulay_systems(seed, systems)):
        J, minor = macaulay_quotient_parts(forms, degs)
        res = macaulay_resultant(forms, degs, seed=seed)
        if len(forms) == 2:
            oracle = sylvester_resultant(forms[0], forms[1], degs[0], degs[1])
        else:
            # second route: the same resultant after a unimodular coordinate change
            A = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]  # det 2
            moved = [f.substitute_linear(A) for f in forms]
            oracle = macaulay_resultant(moved, degs, seed=seed) / QQ(2) ** prod(degs)
        ident = J == res * minor
        dim = quotient_dimension(forms, degs)
        bezout = (res != 0) == (dim == prod(degs))
        good = ident and res == oracle and bezout
        ok &= good
        rows.append({"system": t, "degrees": degs, "resultant": QQ.to_str(res), "J": QQ.to_str(J),
                     "minor": QQ.to_str(minor), "oracle_agrees": res == oracle, "identity": ident,
                     "quotient_dim": dim, "bezout": bezout})
    x2y3 = quotient_dimension([poly("x^2", ["x", "y"]), poly("y^3", ["x", "y"])], [2, 3])
    ok &= x2y3 == 6
    return {"linear_failures": lin_fail, "systems": rows, "x2_y3_dimension": x2y3}, ok


# --- 6. resolution --------------------------------------------------------------------------

RESOLUTION_CASES = [
    ("cusp", "x^2 - y^3", 2, ["x", "y"], []),
    ("monomial", "x^3*y^2", 4, ["x", "y"], ["x", "y"]),
    ("umbrella", "x^2 - z*y^2", 2, ["x", "y", "z"], []),
]


def run_resolution_case(name, text, mu, names, E):
    M = MarkedIdeal.parse(text, mu, names, E)
    t0 = time.perf_counter()
    T = resolve_marked(M, names=names)
    rep = verify_resolution(T, M)
    elapsed = time.perf_counter() - t0
    leaves = T.leaves()
    info = {
        "case": name,
        "blowups": T.blowups,
        "charts": len(T.charts),
        "leaf_depths": sorted({c.depth for c in leaves}),
        "max_depth": T.max_depth(),
        "checks": rep["checks"],
        "verified": rep["passed"],
        "within_budget": elapsed < RESOLUTION_BUDGET,
    }
    if name == "cusp":
        good = T.blowups == 1
    elif name == "monomial":
        # two blow-ups suffice on every branch; the deepest branch needs both
        good = T.max_depth() == 2 and all(c.depth <= 2 for c in leaves)
    else:
        good = T.status == "resolved"
        centers = [c for c in T.charts if c.center is not None]
        if centers:
            # the first center on the root chart must sit in the top Samuel stratum
            f = poly(text, names, trunc=8)
            root = centers[0]
            pts = [tuple(0 if j in root.center else t for j in range(len(names))) for t in (0, 1, 2)]
            probe = samuel_stratum_probe([f], [(2, 0, 0)], pts)
            info["root_center_probe"] = [p["in_stratum"] for p in probe]
            good &= all(p["in_stratum"] for p in probe)
    return info, good and rep["passed"] and info["within_budget"], elapsed


def criterion_resolution(seed=0):
    rows, ok, times = [], True, {}
    for case in RESOLUTION_CASES:
        info, good, elapsed = run_resolution_case(*case)
        rows.append({**info, "passed": good})
        times[case[0]] = elapsed
        ok &= good
    return {"cases": rows}, ok, times


# --- 7. Samuel basis checker --------------------------------------------------------------

def criterion_samuel_basis(seed=0):
    f = poly("x^2 - y^3", ["x", "y"], trunc=8)
    good = check_samuel_basis([f], [(2,)], [(0, 0)], seed=seed)[0]
    wrong = check_samuel_basis([f], [(2, 0), (0, 3)], [(0, 0)], seed=seed)[0]
    JR = good["conditions"][5].get("JR")
    details = {"cusp_passed": good["passed"], "cusp_JR": JR, "wrong_first_failure": wrong["first_failure"],
               "wrong_H": wrong["conditions"][1]}
    return details, good["passed"] and wrong["first_failure"] == 1


# --- driver ----------------------------------------------------------------------------------

CRITERIA = [
    (1, "division exactness", criterion_division),
    (2, "diagram partition", criterion_diagrams),
    (3, "Hilbert-Samuel two ways", criterion_hilbert_samuel),
    (4, "Stanley bases and stabilization", criterion_stanley),
    (5, "Macaulay identities", criterion_macaulay),
    (6, "resolution regression", criterion_resolution),
    (7, "Samuel basis checker", criterion_samuel_basis),
]


def run_criterion(k, seed=0):
    for cid, name, fn in CRITERIA:
        if cid == k:
            t0 = time.perf_counter()
            out = fn(seed)
            elapsed = time.perf_counter() - t0
            details, passed = out[0], out[1]
            return {"id": cid, "name": name, "passed": bool(passed), "details": details}, elapsed
    raise KeyError(k)


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def run_suite(seed=0, determinism=True):
    """Report dict and per-criterion wall times.  Criterion 8 reruns 1-7 and
    compares the canonical serializations."""
    results, times = [], {}
    for cid, _, _ in CRITERIA:
        rep, t = run_criterion(cid, seed)
        results.append(rep)
        times[cid] = t
    if determinism:
        first = canonical(results)
        again = [run_criterion(cid, seed)[0] for cid, _, _ in CRITERIA]
        second = canonical(again)
        h1 = hashlib.sha256(first.encode()).hexdigest()
        h2 = hashlib.sha256(second.encode()).hexdigest()
        results.append({"id": 8, "name": "determinism", "passed": h1 == h2,
                        "details": {"sha256_first": h1, "sha256_second": h2}})
    report = {"schema": SCHEMA, "seed": seed, "criteria": results,
              "passed": all(r["passed"] for r in results)}
    return report, times


def table(report):
    lines = []
    for r in report["criteria"]:
        lines.append(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['id']}. {r['name']}")
    return "\n".join(lines)
