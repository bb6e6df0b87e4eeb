"""Stanley decompositions of finitely presented graded modules M = R^k / N.

R = K[x_1..x_n] and R_i = K[x_{n-i+1}, ..., x_n] (R_0 = K).  A basis entry
(b, i, d) contributes the free summand R_i * b with b homogeneous of degree d.

Construction: per degree, row-reduce the relation multiples with pivots in
position-over-term order (highest component first, then T-minimal monomial).
The pivots in component c give the diagram of I_c = pi_c(N cap R^c); the
Gamma-decomposition cells A_j x N^{n-j} of each diagram give the summands
x^a e_c * R_{n-j}.
"""

from dataclasses import dataclass, field
from math import comb
import random

from . import exponents as ex
from .diagrams import Diagram
from .errors import DimensionMismatch, NotFiniteType, RetryExhausted, VerificationFailed
from .exponents import standard_order
from .fields import QQ
from .linalg import Echelon, rank
from .series import TruncatedSeries, parse_poly, default_names
from .stdbasis import identity, random_unimodular

MAX_RETRIES = 32


def phi(m, k):
    """C(m+k, k) for m >= 0, else 0: monomials of degree <= m in k variables."""
    return comb(m + k, k) if m >= 0 else 0


@dataclass(frozen=True)
class GradedModule:
    n: int
    k: int
    relations: tuple  # each: tuple of k dicts exponent -> coeff
    field: object = QQ
    gen_degrees: tuple = None

    def __post_init__(self):
        gd = tuple(self.gen_degrees) if self.gen_degrees is not None else (0,) * self.k
        if len(gd) != self.k:
            raise DimensionMismatch("one degree per free generator")
        rels = []
        degs = []
        for rel in self.relations:
            rel = tuple(dict(c) for c in rel)
            if len(rel) != self.k:
                raise DimensionMismatch("relation vector of wrong length")
            d = None
            for c, comp in enumerate(rel):
                for a, v in comp.items():
                    if len(a) != self.n:
                        raise DimensionMismatch("exponent of wrong dimension in a relation")
                    e = sum(a) + gd[c]
                    if d is None:
                        d = e
                    elif e != d:
                        raise ValueError("relation is not homogeneous")
            if d is None:
                continue
            rels.append(tuple({a: self.field(v) for a, v in comp.items() if v != 0} for comp in rel))
            degs.append(d)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "gen_degrees", gd)
        object.__setattr__(self, "_rel_degrees", tuple(degs))

    @classmethod
    def from_text(cls, k, relations, names=None, field=QQ, gen_degrees=None):
        """``relations``: list of length-k lists of polynomial strings."""
        if names is None:
            from .series import infer_names

            names = infer_names([t for rel in relations for t in rel if t.strip() not in ("", "0")])
            if not names:
                names = ["x"]
        rels = []
        for rel in relations:
            comps = []
            for t in rel:
                t = t.strip()
                comps.append({} if t in ("", "0") else dict(parse_poly(t, names, field, 64).coeffs))
            rels.append(comps)
        return cls(len(names), k, tuple(rels), field, gen_degrees), list(names)

    @classmethod
    def quotient_ring(cls, gens):
        """R / (g_1, ..., g_r) from TruncatedSeries generators."""
        g0 = gens[0]
        return cls(g0.n, 1, tuple(({a: c for a, c in g.coeffs.items()},) for g in gens), g0.field)

    def rel_degrees(self):
        return self._rel_degrees

    def max_rel_degree(self):
        return max(self._rel_degrees, default=0)

    def columns(self, t):
        """Basis of (R^k)_t as (component, exponent) pairs."""
        out = []
        for c, g in enumerate(self.gen_degrees):
            if t >= g:
                out.extend((c, a) for a in ex.monomials_of_degree(self.n, t - g))
        return out

    def relation_rows(self, t):
        rows = []
        for rel, d in zip(self.relations, self._rel_degrees):
            if d > t:
                continue
            for gm in ex.monomials_of_degree(self.n, t - d):
                row = {}
                for c, comp in enumerate(rel):
                    for a, v in comp.items():
                        row[(c, ex.add(a, gm))] = v
                if row:
                    rows.append(row)
        return rows

    def dim(self, t):
        return len(self.columns(t)) - rank(self.relation_rows(t), self.field)

    def substitute_linear(self, M):
        rels = []
        for rel in self.relations:
            comps = []
            for comp in rel:
                if not comp:
                    comps.append({})
                    continue
                deg = max(sum(a) for a in comp)
                s = TruncatedSeries(comp, self.n, 0, deg, True, self.field).substitute_linear(M)
                comps.append(dict(s.coeffs))
            rels.append(comps)
        return GradedModule(self.n, self.k, tuple(rels), self.field, self.gen_degrees)

    def to_json(self, names=None):
        names = names or default_names(self.n)
        from .series import format_poly

        return {
            "n": self.n,
            "rank": self.k,
            "gen_degrees": list(self.gen_degrees),
            "relations": [[format_poly(comp, self.n, self.field, names) for comp in rel] for rel in self.relations],
        }


@dataclass(frozen=True)
class BasisEntry:
    element: tuple  # tuple of k dicts exponent -> coeff (homogeneous)
    ring_index: int
    degree: int

    @classmethod
    def monomial(cls, n, k, comp, a, ring_index, gdeg, F=QQ):
        el = tuple({a: F.one} if c == comp else {} for c in range(k))
        return cls(el, ring_index, sum(a) + gdeg)

    def to_json(self, F, names):
        from .series import format_poly

        n = len(names)
        return {"element": [format_poly(c, n, F, names) for c in self.element],
                "ring_index": self.ring_index, "degree": self.degree}


@dataclass
class StanleyBasis:
    entries: list
    module: GradedModule  # presentation the entries refer to (after the coordinate change)
    change: list = None  # matrix of the coordinate change u -> M u applied to the input
    diagrams: list = field(default_factory=list)
    bound: int = 0

    def profile(self):
        return sorted((e.ring_index, e.degree) for e in self.entries)

    def d(self):
        return max((e.degree for e in self.entries), default=0)

    def to_json(self, names=None):
        M = self.module
        names = names or default_names(M.n)
        return {
            "entries": [e.to_json(M.field, names) for e in self.entries],
            "coordinate_change": self.change,
            "presentation": M.to_json(names),
            "diagrams": [None if D is None else [list(v) for v in D.vertices] for D in self.diagrams],
            "d": self.d(),
            "bound": self.bound,
            "hilbert": [hilbert_from_basis(self, s) for s in range(self.bound + 1)],
        }


def hilbert_from_basis(B, s):
    entries = B.entries if isinstance(B, StanleyBasis) else B
    return sum(phi(s - e.degree, e.ring_index) for e in entries)


def brute_hilbert(M, s):
    """sum_{t <= s} dim M_t by ranks."""
    return sum(M.dim(t) for t in range(s + 1))


def _component_diagrams(M, bound, order=None):
    T = (order or standard_order(M.n)).completed()
    key = lambda col: (-col[0], T.key(col[1]))
    pivots = [[] for _ in range(M.k)]
    for t in range(bound + 1):
        ech = Echelon(M.field, key)
        for row in M.relation_rows(t):
            ech.insert(row)
        for c, a in ech.pivots():
            pivots[c].append(a)
    return [Diagram.from_exponents(p, M.n) if p else None for p in pivots]


def _entries_from_diagrams(M, diagrams):
    entries = []
    n, k, F = M.n, M.k, M.field
    for c, D in enumerate(diagrams):
        g = M.gen_degrees[c]
        if D is None:
            entries.append(BasisEntry.monomial(n, k, c, ex.zero(n), n, g, F))
            continue
        for j, A in sorted(D.gamma_parts.items()):
            for a in A:
                full = a + (0,) * (n - j)
                entries.append(BasisEntry.monomial(n, k, c, full, n - j, g, F))
    return entries


def default_bound(M, d=0):
    return max(2 * d + 5, M.max_rel_degree() + M.n + 1)


def stanley_decomposition(M, seed=0, bound=None, retries=MAX_RETRIES, order=None):
    """A verified StanleyBasis; coordinates are changed (seeded) until every component
    diagram is monotone, the identity being tried first."""
    rng = random.Random(seed)
    b0 = M.max_rel_degree() + M.n + 1
    C = identity(M.n)
    for attempt in range(retries + 1):
        Mt = M if attempt == 0 else M.substitute_linear(C)
        diags = _component_diagrams(Mt, b0, order)
        if all(D is None or D.is_monotone() for D in diags):
            entries = _entries_from_diagrams(Mt, diags)
            d = max((e.degree for e in entries), default=0)
            bnd = bound if bound is not None else default_bound(M, d)
            if bnd <= b0:
                break
            # vertices above b0 may still appear; the extended diagrams must stay monotone
            diags2 = _component_diagrams(Mt, bnd, order)
            if all(D is None or D.is_monotone() for D in diags2):
                if [D and D.vertices for D in diags2] != [D and D.vertices for D in diags]:
                    diags = diags2
                    entries = _entries_from_diagrams(Mt, diags)
                break
        C = random_unimodular(M.n, rng)
    else:
        raise RetryExhausted("no coordinate change made the component diagrams monotone", retries=retries)
    B = StanleyBasis(entries, Mt, C, diags, bnd)
    ok, info = check_basis(Mt, entries, bnd)
    if not ok:
        raise VerificationFailed(f"Stanley basis check failed at degree {info['degree']}", **info)
    return B


# --- verification ---------------------------------------------------------------------------

def _structured(M, entries, t):
    """Vectors b * x^g, g a monomial in the last ring_index variables, of total degree t."""
    n = M.n
    out = []
    for e in entries:
        if e.degree > t:
            continue
        i = e.ring_index
        if i == 0:
            if e.degree == t:
                out.append(_vec(e.element, ex.zero(n)))
            continue
        for g in ex.monomials_of_degree(i, t - e.degree):
            out.append(_vec(e.element, (0,) * (n - i) + g))
    return out


def _vec(element, g):
    row = {}
    for c, comp in enumerate(element):
        for a, v in comp.items():
            row[(c, ex.add(a, g))] = v
    return row


def check_basis(M, entries, bound):
    """For each t <= bound: the structured products are independent mod N_t and span."""
    F = M.field
    for t in range(bound + 1):
        rel = M.relation_rows(t)
        S = _structured(M, entries, t)
        rN = rank(rel, F)
        total = len(M.columns(t))
        rAll = rank(rel + S, F)
        if rAll != total:
            return False, {"degree": t, "reason": "does not span", "rank": rAll, "dim": total}
        if rAll - rN != len(S):
            return False, {"degree": t, "reason": "dependent", "count": len(S), "rank_gain": rAll - rN}
    return True, {"bound": bound}


def generates(M, entries, bound, start=0):
    F = M.field
    for t in range(start, bound + 1):
        rel = M.relation_rows(t)
        S = _structured(M, entries, t)
        if rank(rel + S, F) != len(M.columns(t)):
            return False, t
    return True, None


def majorizes(A, B, M, bound):
    """A majorizes the candidate list B: same (ring index, degree) profile and B generates."""
    pa = sorted((e.ring_index, e.degree) for e in (A.entries if isinstance(A, StanleyBasis) else A))
    pb = sorted((e.ring_index, e.degree) for e in B)
    if pa != pb:
        return False
    ok, _ = generates(M, B, bound)
    return ok


def stabilization_check(M, candidates, d=None, oracle_bound=None, seed=0):
    """Generation up to d(M)+1 versus an independent check up to oracle_bound."""
    if d is None:
        d = stanley_decomposition(M, seed).d()
    oracle_bound = oracle_bound if oracle_bound is not None else 2 * d + 5
    thr_ok, thr_fail = generates(M, candidates, d + 1)
    orc_ok, orc_fail = generates(M, candidates, oracle_bound)
    return {
        "d": d,
        "threshold": d + 1,
        "threshold_pass": thr_ok,
        "threshold_failure_degree": thr_fail,
        "oracle_bound": oracle_bound,
        "oracle_pass": orc_ok,
        "oracle_failure_degree": orc_fail,
        "contradiction": thr_ok and not orc_ok,
    }


def entry(comp_polys, ring_index, gen_degrees=None):
    """Build a BasisEntry from k coefficient dicts (homogeneous)."""
    el = tuple(dict(c) for c in comp_polys)
    gd = gen_degrees or (0,) * len(el)
    degs = {sum(a) + gd[c] for c, comp in enumerate(el) for a in comp}
    if len(degs) != 1:
        raise ValueError("basis element must be homogeneous and nonzero")
    return BasisEntry(el, ring_index, degs.pop())
