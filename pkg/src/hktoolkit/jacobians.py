"""Generalized Jacobians J^s / J0_s, Macaulay resultants, the JR operator and
essential spaces.

Rows and columns of J^s are indexed by the degree-s slice Delta(s) of the
diagram spanned by the alpha_i, sorted reverse-lexicographically.  Column beta
belongs to f_beta = u^gamma f_i with beta = alpha_i + gamma, i the first index
(in the given order) with alpha_i <= beta.
"""

from dataclasses import dataclass
from math import comb, prod
import random

from . import exponents as ex
from .diagrams import Diagram
from .errors import DegenerateAfterRetries, DimensionMismatch
from .linalg import Echelon, det, rank
from .series import TruncatedSeries

MAX_RETRIES = 32


@dataclass(frozen=True)
class JacobianProblem:
    fs: tuple
    alphas: tuple
    point: tuple = None

    def __post_init__(self):
        fs = tuple(self.fs)
        alphas = tuple(tuple(a) for a in self.alphas)
        if len(fs) != len(alphas) or not fs:
            raise DimensionMismatch("one exponent per function")
        n = fs[0].n
        if any(f.n != n for f in fs) or any(len(a) != n for a in alphas):
            raise DimensionMismatch("functions and exponents must share the dimension")
        q = tuple(self.point) if self.point is not None else (0,) * n
        if len(q) != n:
            raise DimensionMismatch("point has wrong dimension")
        object.__setattr__(self, "fs", fs)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "point", q)
        F = fs[0].field
        # recentered functions (the translation is the identity at the origin)
        object.__setattr__(self, "_centered", tuple(f.translate(q) for f in fs))
        object.__setattr__(self, "field", F)

    @property
    def n(self):
        return self.fs[0].n

    @property
    def diagram(self):
        return Diagram.from_exponents(self.alphas)

    def owner(self, beta):
        for i, a in enumerate(self.alphas):
            if ex.dominates(a, beta):
                return i
        return None

    def slice(self, s):
        """Delta(s) in reverse-lex order."""
        out = [b for b in ex.monomials_of_degree(self.n, s) if self.owner(b) is not None]
        return sorted(out, key=ex.revlex_key)

    def reduced_slice(self, s):
        sl = self.slice(s)
        verts = set(self.diagram.vertices)
        if not any(b in verts for b in sl):
            return []
        return [b for b in sl if b not in verts]

    def entry(self, alpha, beta):
        i = self.owner(beta)
        e = tuple(a - b + c for a, b, c in zip(alpha, beta, self.alphas[i]))
        if any(x < 0 for x in e):
            return self.field.zero
        return self._centered[i].coefficient(e)

    def _entry_direct(self, alpha, beta):
        # second route: coefficient of u^gamma * f_i (recentered) at alpha
        i = self.owner(beta)
        gamma = ex.sub(beta, self.alphas[i])
        g = self._centered[i]
        fb = g * g._new({gamma: self.field.one}, exact=True, trunc=max(g.trunc, sum(beta) + sum(alpha)))
        return fb.coefficient(alpha)

    def matrix(self, s, variant="full", check_routes=False):
        idx = self.slice(s) if variant == "full" else self.reduced_slice(s)
        M = [[self.entry(a, b) for b in idx] for a in idx]
        if check_routes:
            for r, a in enumerate(idx):
                for c, b in enumerate(idx):
                    assert M[r][c] == self._entry_direct(a, b), (a, b)
        return idx, M

    def det(self, s, variant="full"):
        idx, M = self.matrix(s, variant)
        return det(M, self.field) if idx else self.field.one


def jacobian_matrix(P, s, variant="full"):
    return P.matrix(s, variant)


def jacobian_det(P, s, variant="full"):
    return P.det(s, variant)


def check_conditions(P, s_max=None, reduced=False):
    """[(s, det, invertible)] for s <= d(Delta)+1 (or s_max); first failure or None."""
    if s_max is None:
        s_max = P.diagram.d() + 1
    rows, first = [], None
    s0 = min(sum(a) for a in P.alphas)
    variants = ("full", "reduced") if reduced else ("full",)
    for s in range(s0, s_max + 1):
        for v in variants:
            d = P.det(s, v)
            ok = d != 0
            rows.append({"s": s, "variant": v, "det": P.field.to_str(d), "invertible": ok})
            if not ok and first is None:
                first = (s, v)
    return rows, first


# --- Macaulay resultant ------------------------------------------------------

def _forms_problem(forms, degrees):
    k = len(forms)
    alphas = [ex.unit(k, i, d) for i, d in enumerate(degrees)]
    return JacobianProblem(tuple(forms), tuple(alphas))


def _check_forms(forms, degrees):
    if len(forms) != len(degrees) or not forms:
        raise DimensionMismatch("one degree per form")
    k = len(forms)
    for F, d in zip(forms, degrees):
        if F.n != k:
            raise DimensionMismatch("need as many forms as variables")
        if any(sum(a) != d for a in F.coeffs):
            raise ValueError(f"form is not homogeneous of degree {d}")


def macaulay_quotient_parts(forms, degrees, s=None):
    """(J^s, extraneous minor) for the forms with vertices d_i e_i."""
    k = len(forms)
    d = sum(degrees) - k + 1 if s is None else s
    P = _forms_problem(forms, degrees)
    idx, M = P.matrix(d)
    nonreduced = [i for i, b in enumerate(idx) if sum(1 for j, dj in enumerate(degrees) if b[j] >= dj) >= 2]
    minor = [[M[r][c] for c in nonreduced] for r in nonreduced]
    F = P.field
    return det(M, F), (det(minor, F) if nonreduced else F.one)


def _linear_change(F, A):
    return F.substitute_linear(A)


def macaulay_resultant(forms, degrees=None, seed=0, retries=MAX_RETRIES):
    """Resultant of k homogeneous forms in k variables, normalized by Res(x_i^{d_i}) = 1."""
    forms = list(forms)
    if degrees is None:
        degrees = [max(sum(a) for a in F.coeffs) if F.coeffs else 0 for F in forms]
    _check_forms(forms, degrees)
    Fd = forms[0].field
    k = len(forms)
    J, minor = macaulay_quotient_parts(forms, degrees)
    if minor != 0:
        return Fd.norm(J * Fd.inv(minor))
    rng = random.Random(seed)
    weight = prod(degrees)
    for _ in range(retries):
        A = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        dA = det(A, Fd)
        if dA == 0:
            continue
        moved = [_linear_change(F, A) for F in forms]
        J, minor = macaulay_quotient_parts(moved, degrees)
        if minor != 0:
            res = Fd.norm(J * Fd.inv(minor))
            return Fd.norm(res * Fd.inv(Fd.norm(dA**weight)))
    raise DegenerateAfterRetries("extraneous minor vanished after all coordinate changes", retries=retries)


def quotient_dimension(forms, degrees=None):
    """dim K[x]/(F) by degreewise ranks; None when infinite (nonzero in degree sum(d_i)-k+1)."""
    forms = list(forms)
    if degrees is None:
        degrees = [max(sum(a) for a in F.coeffs) for F in forms]
    k = len(forms)
    Fd = forms[0].field
    d = sum(degrees) - k + 1
    total = 0
    for t in range(d + 1):
        rows = []
        for F, di in zip(forms, degrees):
            if t < di:
                continue
            for g in ex.monomials_of_degree(k, t - di):
                rows.append({ex.add(a, g): c for a, c in F.coeffs.items()})
        dim_t = comb(t + k - 1, k - 1) - rank(rows, Fd)
        if t == d:
            return total if dim_t == 0 else None
        total += dim_t
    return total


# --- JR operator and essential spaces ------------------------------------------

def hasse_form(f, q, a, s):
    """sum_{|alpha| = a, alpha in N^s} D_{u^alpha}(f)(q) X^alpha as a form in s unknowns."""
    g = f.translate(q) if any(x != 0 for x in q) else f
    coeffs = {}
    for b in ex.monomials_of_degree(s, a):
        c = g.coefficient(b + (0,) * (g.n - s))
        if c != 0:
            coeffs[b] = c
    return TruncatedSeries(coeffs, s, 0, max(a, 1), True, f.field)


def jr_operator(fs, q, avec, seed=0):
    s = len(fs)
    if len(avec) != s:
        raise DimensionMismatch("one a_i per function")
    forms = [hasse_form(f, q, a, s) for f, a in zip(fs, avec)]
    return macaulay_resultant(forms, list(avec), seed=seed), forms


def essential_space(F):
    """Basis (reduced echelon rows, as dicts var-index -> coeff) of D^{d-1}(F)."""
    if F.field.p:
        raise ValueError("essential spaces are computed in characteristic 0 only")
    if F.is_zero():
        return []
    d = max(sum(a) for a in F.coeffs)
    n = F.n
    ech = Echelon(F.field)
    for al in ex.monomials_of_degree(n, d - 1):
        D = F.hasse(al)
        row = {}
        for a, c in D.coeffs.items():
            if sum(a) == 1:
                row[a.index(1)] = c
        if row:
            ech.insert(row)
    out = []
    for piv in ech.pivots():
        out.append(_fully_reduced(ech, piv))
    return out


def _fully_reduced(ech, piv):
    row = dict(ech.rows[piv])
    for other in ech.pivots():
        if other != piv and other in row:
            c = row[other]
            for kk, v in ech.rows[other].items():
                w = ech.F.norm(row.get(kk, 0) - c * v)
                if w == 0:
                    row.pop(kk, None)
                else:
                    row[kk] = w
    return row
