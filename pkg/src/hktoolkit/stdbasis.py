"""Initial diagrams of ideals mod m^{D+1}, reduced standard bases, Hilbert-Samuel
functions at points and the pointwise standard-basis checker.

The image of I in R/m^{D+1} is spanned by the truncated products u^b * g_j.
Row-reducing them with pivots chosen T-minimal gives exactly the exponents of
Delta(I) of degree <= D (series that agree mod m^{D+1} share their initial
exponent as long as its degree is <= D, the first form of T being the degree).
"""

from dataclasses import dataclass, field
from math import comb
import random

from . import exponents as ex
from .diagrams import Diagram, hs_window
from .division import DivisionProblem, formal_divide
from .errors import (
    DimensionMismatch,
    InvalidOrder,
    NotExact,
    RetryExhausted,
    TruncationTooSmall,
    VerificationFailed,
)
from .exponents import standard_order
from .jacobians import JacobianProblem, jr_operator
from .linalg import Echelon, det, rank
from .series import TruncatedSeries

MAX_RETRIES = 32


@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple
    order: object = None
    trunc: int = None

    def __post_init__(self):
        gens = tuple(g for g in self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        g0 = gens[0]
        for g in gens:
            g0._compat(g)
        if all(g.is_zero() for g in gens):
            raise ValueError("all generators vanish")
        gens = tuple(g for g in gens if not g.is_zero())
        order = self.order or standard_order(g0.n)
        if order.n != g0.n:
            raise DimensionMismatch("order dimension differs from the ring")
        if not order.normalized:
            raise InvalidOrder("initial diagrams need a normalized order (first form = degree)")
        D = self.trunc if self.trunc is not None else min(g.trunc for g in gens)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "trunc", D)

    @property
    def n(self):
        return self.generators[0].n

    @property
    def field(self):
        return self.generators[0].field

    def translate(self, q):
        if all(x == 0 for x in q):
            return self
        if not all(g.exact for g in self.generators):
            raise NotExact("recentering needs exact polynomial generators")
        return IdealPresentation(tuple(g.translate(q) for g in self.generators), self.order, self.trunc)

    def with_trunc(self, D):
        return IdealPresentation(self.generators, self.order, D)

    def substitute_linear(self, M):
        return IdealPresentation(tuple(g.substitute_linear(M) for g in self.generators), self.order, self.trunc)


@dataclass
class Certificate:
    trunc: int
    pivots: int
    rows: int

    def to_json(self):
        return {"complete_up_to_degree": self.trunc, "pivots": self.pivots, "rows": self.rows}


def _echelon(I, D=None):
    D = I.trunc if D is None else D
    T = I.order.completed()
    ech = Echelon(I.field, key=T.key)
    n = I.n
    nrows = 0
    for g in I.generators:
        g = g.truncate(D)
        if g.is_zero():
            continue
        o = g.ord()
        for b in ex.monomials_up_to(n, D - o):
            row = {}
            for a, c in g.coeffs.items():
                e = ex.add(a, b)
                if sum(e) <= D:
                    row[e] = c
            if row:
                nrows += 1
                ech.insert(row)
    return ech, nrows


def truncated_initial_diagram(I, D=None):
    """(Delta(I) cut at degree D, certificate)."""
    D = I.trunc if D is None else D
    ech, nrows = _echelon(I, D)
    piv = ech.pivots()
    return Diagram.from_exponents(piv, I.n), Certificate(D, len(piv), nrows)


def _fully_reduce(ech, c):
    F = ech.F
    row = dict(ech.rows[c])
    key = ech.key
    while True:
        others = [k for k in row if k != c and k in ech.rows]
        if not others:
            return row
        k = min(others, key=key)
        coef = row[k]
        for kk, v in ech.rows[k].items():
            w = F.norm(row.get(kk, 0) - coef * v)
            if w == 0:
                row.pop(kk, None)
            else:
                row[kk] = w


@dataclass
class StandardBasisReport:
    diagram: Diagram
    basis: list
    certificate: Certificate
    conditions: dict = field(default_factory=dict)

    @property
    def alphas(self):
        return list(self.diagram.vertices)

    def to_json(self, names=None):
        return {
            "diagram": self.diagram.to_json(),
            "basis": [{"alpha": list(a), "f": f.to_str(names), "series": f.to_json()}
                      for a, f in zip(self.alphas, self.basis)],
            "certificate": self.certificate.to_json(),
            **({"conditions": self.conditions} if self.conditions else {}),
        }


def standard_basis(I, D=None, check=True):
    """Reduced standard basis f_i = u^{alpha_i} + r_i, supp r_i in Gamma, mod m^{D+1}."""
    D = I.trunc if D is None else D
    max_ord = max(g.ord() for g in I.generators)
    if D < max_ord:
        raise TruncationTooSmall(f"D = {D} below the generator order {max_ord}", needed=max_ord)
    ech, nrows = _echelon(I, D)
    diag = Diagram.from_exponents(ech.pivots(), I.n)
    g0 = I.generators[0]
    basis = []
    for a in diag.vertices:
        row = _fully_reduce(ech, a)
        f = TruncatedSeries(row, g0.n_main, g0.n_param, D, False, I.field)
        basis.append(f)
    rep = StandardBasisReport(diag, basis, Certificate(D, len(ech), nrows))
    if check:
        _verify_basis(I, rep, D)
    return rep


def _verify_basis(I, rep, D):
    nonpiv_ok = all(
        a == v or a not in rep.diagram for v, f in zip(rep.diagram.vertices, rep.basis) for a in f.coeffs
    )
    if not nonpiv_ok:
        raise VerificationFailed("a basis tail meets the diagram")
    for v, f in zip(rep.diagram.vertices, rep.basis):
        if f.ord() != sum(v):
            raise VerificationFailed(f"ord of basis element for {v} differs from |alpha|")
    P = DivisionProblem.make(rep.basis, rep.diagram.vertices, I.order, D)
    for j, g in enumerate(I.generators):
        res = formal_divide(P, g.truncate(D))
        if not res.r.is_zero():
            raise VerificationFailed(f"generator {j + 1} does not reduce to zero")


# --- generic coordinates ------------------------------------------------------------

def random_unimodular(n, rng):
    """Product of a random unit lower and a random unit upper triangular integer matrix."""
    L = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    return [[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def generic_coordinates(I, seed=0, retries=MAX_RETRIES, D=None):
    """(matrix, transformed ideal, diagram) with a monotone diagram; identity tried first."""
    rng = random.Random(seed)
    n = I.n
    M = identity(n)
    for attempt in range(retries + 1):
        J = I if attempt == 0 else I.substitute_linear(M)
        diag, _ = truncated_initial_diagram(J, D)
        if diag.is_monotone():
            return M, J, diag
        M = random_unimodular(n, rng)
    raise RetryExhausted("no coordinate change made the diagram monotone", retries=retries)


# --- Hilbert-Samuel functions ------------------------------------------------------------

def hilbert_samuel_at(I, q=None, s_max=8):
    """H_{I,q}(s) for s <= s_max via the truncated initial diagram at q."""
    q = q if q is not None else (0,) * I.n
    J = I.translate(q).with_trunc(s_max)
    diag, _ = truncated_initial_diagram(J)
    return diag.hs_profile(s_max)


def hs_rank_oracle(I, q=None, s_max=8):
    """dim R/(I + m^{s+1}) by plain ranks (no order involved)."""
    q = q if q is not None else (0,) * I.n
    J = I.translate(q)
    n = I.n
    out = []
    for s in range(s_max + 1):
        rows = []
        for g in J.generators:
            g = g.truncate(s)
            if g.is_zero():
                continue
            for b in ex.monomials_up_to(n, s - g.ord()):
                row = {ex.add(a, b): c for a, c in g.coeffs.items() if sum(a) + sum(b) <= s}
                if row:
                    rows.append(row)
        out.append(comb(s + n, n) - rank(rows, I.field))
    return out


# --- the pointwise standard-basis checker ------------------------------------------------

def _padded(alphas, n):
    return [tuple(a) + (0,) * (n - len(a)) for a in alphas]


def essential_count(alphas):
    return max((max((i + 1 for i, x in enumerate(a) if x), default=0) for a in alphas), default=0)


def jr_data(alphas, p=0):
    """[(i, j(i), a_i, beta_i)] for the coordinates spanned by the vertices."""
    s = essential_count(alphas)
    out = []
    for i in range(s):
        cands = [(sum(a), ex.revlex_key(a), j) for j, a in enumerate(alphas) if a[i]]
        if not cands:
            return None
        _, _, j = min(cands)
        c = alphas[j][i]
        a_i = 1
        if p:
            while c % p == 0:
                c //= p
                a_i *= p
        beta = list(alphas[j])
        beta[i] -= a_i
        out.append((i, j, a_i, tuple(beta)))
    return out


def check_samuel_basis(fs, alphas, points, ideal=None, seed=0):
    """Verdicts for conditions (1)-(5) at each point.

    ``alphas`` lives in N^s (s = its length); it is matched with ``fs`` in order.
    ``ideal`` defaults to the ideal generated by ``fs``.
    """
    fs = list(fs)
    n = fs[0].n
    F = fs[0].field
    s_dim = len(alphas[0])
    full = _padded(alphas, n)
    delta = Diagram.from_exponents(full, n)
    I = ideal or IdealPresentation(tuple(fs))
    s_star = hs_window(delta, delta)[0]
    results = []
    for q in points:
        q = tuple(q)
        v = {}
        # (1)
        H = hilbert_samuel_at(I, q, s_star)
        Hd = delta.hs_profile(s_star)
        bad = next((s for s in range(s_star + 1) if H[s] != Hd[s]), None)
        v[1] = {"ok": bad is None, "H_point": H, "H_diagram": Hd}
        if bad is not None:
            v[1]["first_difference"] = bad
        cen = [f.translate(q) for f in fs]
        # (2)
        ords = [None if g.is_zero() else g.ord() for g in cen]
        v[2] = {"ok": len(fs) == len(full) and all(o == sum(a) for o, a in zip(ords, full)), "ord": ords}
        # (3)
        ok3, wit = len(fs) == len(full), None
        for g, a in zip(cen, full):
            if g.hasse(a).evaluate((0,) * n) != 1:
                ok3, wit = False, {"alpha": list(a), "reason": "D_alpha f(x) != 1"}
                break
            extra = [b for b in g.supd() if b != a and b[:s_dim] + (0,) * (n - s_dim) in delta]
            if extra:
                ok3, wit = False, {"alpha": list(a), "outside": list(min(extra, key=ex.revlex_key))}
                break
        v[3] = {"ok": ok3, **({"witness": wit} if wit else {})}
        # (4)
        if delta.is_finite_type() and len(fs) == len(full):
            P = JacobianProblem(tuple(cen), tuple(full))
            top = delta.d() + 1
            dets = [(t, P.det(t)) for t in range(top + 1)]
            fail = next((t for t, d in dets if d == 0), None)
            v[4] = {"ok": fail is None, "range": top, "dets": {str(t): F.to_str(d) for t, d in dets}}
            if fail is not None:
                v[4]["first_failure"] = fail
        else:
            v[4] = {"ok": False, "reason": "diagram not of finite type or basis size mismatch"}
        # (5)
        data = jr_data(full, F.p)
        if data is None or len(fs) != len(full):
            v[5] = {"ok": False, "reason": "vertices do not span N^s"}
        else:
            gs = [cen[j].hasse(beta) for _, j, _, beta in data]
            val, _ = jr_operator(gs, (0,) * n, [a for _, _, a, _ in data], seed=seed)
            v[5] = {"ok": val != 0, "JR": F.to_str(val), "a": [a for _, _, a, _ in data]}
        first = next((k for k in range(1, 6) if not v[k]["ok"]), None)
        results.append({"point": [F.to_str(F(x)) for x in q], "conditions": v, "first_failure": first,
                        "passed": first is None})
    return results


def samuel_stratum_probe(fs, alphas, points, ideal=None):
    """Top Samuel stratum membership: ord_y(f_i) = |alpha_i| for all i."""
    fs = list(fs)
    n = fs[0].n
    full = _padded(alphas, n)
    delta = Diagram.from_exponents(full, n)
    I = ideal or IdealPresentation(tuple(fs))
    s_star = hs_window(delta, delta)[0]
    out = []
    for q in points:
        cen = [f.translate(q) for f in fs]
        ords = [None if g.is_zero() else g.ord() for g in cen]
        unit = any(o == 0 for o in ords)
        member = all(o == sum(a) for o, a in zip(ords, full))
        H = hilbert_samuel_at(I, tuple(q), s_star)
        out.append({
            "point": [str(x) for x in q],
            "ord": ords,
            "in_stratum": member,
            "unit_ideal": unit,
            "H": H,
            "H_matches_diagram": H == delta.hs_profile(s_star),
        })
    return out
