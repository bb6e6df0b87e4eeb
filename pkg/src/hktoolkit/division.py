"""Weierstrass-Hironaka division by series with prescribed initial exponents.

Two engines:

* fixed point: split the residual monomial by monomial into the quotient
  slots / remainder and feed back -sum q_i (f_i - u^{alpha_i}).  Every new term
  is strictly larger than the term that produced it for the key
  (v-degree, T(u-part)), so the loop terminates inside the degree window.
* graded: solve degree by degree a square linear system whose matrix is built
  from the initial forms in(f_i).  Needs ord f_i = |alpha_i|; a singular
  system means the Jacobian hypothesis fails at that degree.
"""

from dataclasses import dataclass

from . import exponents as ex
from .diagrams import Diagram
from .errors import (
    DimensionMismatch,
    InitialExponentMismatch,
    InvalidOrder,
    JacobianSingular,
    SingularMatrix,
    UnitQuotientCheckFailed,
    VerificationFailed,
    ZeroDivisor,
)
from .exponents import standard_order
from .linalg import det, solve_sparse
from .series import TruncatedSeries


def u_exp(f, order):
    """exp_T(f(u, 0)) for the order T on the u-variables."""
    nm = f.n_main
    g = f.at_param_zero()
    if g.is_zero():
        raise ZeroDivisor("f(u, 0) vanishes; no initial exponent")
    T = order.completed()
    a = min(g.coeffs, key=lambda b: T.key(b[:nm]))
    return a[:nm]


@dataclass(frozen=True)
class DivisionProblem:
    fs: tuple  # normalized divisors, coefficient 1 at (alpha_i, 0)
    alphas: tuple
    order: object
    trunc: int
    strict: bool = True

    @classmethod
    def make(cls, fs, alphas=None, order=None, trunc=None, strict=True):
        fs = list(fs)
        if not fs:
            raise ValueError("need at least one divisor")
        f0 = fs[0]
        for f in fs:
            f0._compat(f)
        nm = f0.n_main
        order = order or standard_order(nm)
        if order.n != nm:
            raise DimensionMismatch("order dimension differs from the number of u-variables")
        if not order.normalized or not order.positive:
            raise InvalidOrder("division needs a positive normalized order")
        D = min(f.trunc for f in fs) if trunc is None else trunc
        if alphas is None:
            alphas = [u_exp(f, order) for f in fs]
        alphas = [tuple(a) for a in alphas]
        if len(alphas) != len(fs):
            raise DimensionMismatch("one initial exponent per divisor")
        normed = []
        for i, (f, a) in enumerate(zip(fs, alphas)):
            if len(a) != nm:
                raise DimensionMismatch(f"alpha_{i + 1} has wrong dimension")
            if strict:
                got = u_exp(f, order)
                if got != a:
                    raise InitialExponentMismatch(
                        f"exp(f_{i + 1}(u,0)) = {got}, stated {a}", index=i + 1, found=list(got), stated=list(a)
                    )
            full = a + (0,) * f.n_param
            c = f.coefficient(full)
            if c == 0:
                raise InitialExponentMismatch(f"f_{i + 1} has no term u^{a}", index=i + 1, stated=list(a))
            normed.append(f.scale(f.field.inv(c)).truncate(D))
        return cls(tuple(normed), tuple(alphas), order, D, strict)

    @property
    def n_main(self):
        return self.fs[0].n_main

    @property
    def n_param(self):
        return self.fs[0].n_param

    @property
    def field(self):
        return self.fs[0].field

    @property
    def diagram(self):
        return Diagram.from_exponents(self.alphas)

    def slot(self, a):
        """Index of the first alpha_i dominating the u-exponent a, or None (remainder)."""
        for i, al in enumerate(self.alphas):
            if ex.dominates(al, a):
                return i
        return None

    def in_gamma_i(self, i, a):
        return self.slot(ex.add(self.alphas[i], a)) == i

    def in_gamma(self, a):
        return self.slot(a) is None


@dataclass(frozen=True)
class DivisionResult:
    h: tuple
    r: TruncatedSeries
    engine: str
    iterations: int

    def to_json(self, names=None):
        return {
            "engine": self.engine,
            "h": [q.to_json() for q in self.h],
            "r": self.r.to_json(),
            "h_text": [q.to_str(names) for q in self.h],
            "r_text": self.r.to_str(names),
        }


def _key(P, T, a):
    nm = P.n_main
    return (sum(a[nm:]), T.key(a[:nm]))


def _finish(P, g, h, r, engine, iterations):
    D = P.trunc
    h = tuple(q.truncate(max(D - sum(al), -1)) for q, al in zip(h, P.alphas))
    r = r.truncate(D)
    res = DivisionResult(h, r, engine, iterations)
    ok, why = check_result(P, g, res)
    if not ok:
        raise VerificationFailed(f"division certificate failed: {why}")
    return res


def fixed_point_divide(P, g, schedule="batch", max_iter=100000):
    """Division by the contraction Phi = I + U; ``schedule`` is 'batch' or 'single'."""
    F = P.field
    D = min(P.trunc, g.trunc)
    g = g.truncate(D)
    nm = P.n_main
    T = P.order.completed()
    tails = [f - f.monomial_like(al + (0,) * f.n_param) for f, al in zip(P.fs, P.alphas)]
    h = [g.zero_like() for _ in P.fs]
    r_terms = {}
    rho = dict(g.coeffs)
    it = 0
    while rho:
        it += 1
        if it > max_iter:
            raise JacobianSingular("fixed-point iteration did not terminate", s=None)
        if schedule == "single":
            a0 = min(rho, key=lambda a: (_key(P, T, a), ex.revlex_key(a)))
            batch = {a0: rho.pop(a0)}
        else:
            batch, rho = rho, {}
        kmin = min(_key(P, T, a) for a in batch)
        q = [dict() for _ in P.fs]
        for a, c in batch.items():
            j = P.slot(a[:nm])
            if j is None:
                r_terms[a] = F.norm(r_terms.get(a, 0) + c)
                continue
            b = ex.sub(a, P.alphas[j] + (0,) * P.n_param)
            q[j][b] = F.norm(q[j].get(b, 0) + c)
        new = g.zero_like()._new(rho, trunc=D)
        for j, qj in enumerate(q):
            if not qj:
                continue
            qs = g._new({b: c for b, c in qj.items() if c != 0}, exact=True, trunc=D)
            h[j] = h[j] + qs
            new = new - qs * tails[j].truncate(D)
        rho = {a: c for a, c in new.truncate(D).coeffs.items()}
        if schedule == "batch" and rho and min(_key(P, T, a) for a in rho) <= kmin:
            raise JacobianSingular("residual order did not increase", s=None)
    r = g._new({a: c for a, c in r_terms.items() if c != 0}, trunc=D)
    return _finish(P, g, h, r, f"fixed-point/{schedule}", it)


def graded_divide(P, g):
    """Degree-by-degree linear solve with the initial forms of the divisors."""
    F = P.field
    D = min(P.trunc, g.trunc)
    g = g.truncate(D)
    nm, n = P.n_main, P.n_main + P.n_param
    ins = []
    for i, (f, al) in enumerate(zip(P.fs, P.alphas)):
        if f.is_zero() or f.ord() != sum(al):
            raise InitialExponentMismatch(
                f"graded division needs ord f_{i + 1} = |alpha_{i + 1}|", index=i + 1
            )
        ins.append(f.homogeneous_part(sum(al)))
    h = [dict() for _ in P.fs]
    r = {}
    residual = g
    for s in range(D + 1):
        cols = {}
        for i, al in enumerate(P.alphas):
            k = s - sum(al)
            if k < 0:
                continue
            for b in ex.monomials_of_degree(n, k):
                if not P.in_gamma_i(i, b[:nm]):
                    continue
                prod = ins[i] * g._new({b: F.one}, exact=True, trunc=D)
                cols[("h", i, b)] = prod.coeffs
        for b in ex.monomials_of_degree(n, s):
            if P.in_gamma(b[:nm]):
                cols[("r", b)] = {b: F.one}
        rhs = residual.homogeneous_part(s).coeffs
        if not cols:
            continue
        try:
            sol = solve_sparse(cols, rhs, F)
        except SingularMatrix as e:
            raise JacobianSingular(f"degree-{s} system is singular: {e}", s=s) from None
        step = g.zero_like()
        for name, v in sol.items():
            if name[0] == "r":
                r[name[1]] = v
                step = step + g._new({name[1]: v}, exact=True, trunc=D)
            else:
                _, i, b = name
                h[i][b] = v
                step = step + P.fs[i] * g._new({b: v}, exact=True, trunc=D)
        residual = (residual - step).truncate(D)
    hs = [g._new(q, trunc=D) for q in h]
    return _finish(P, g, hs, g._new(r, trunc=D), "graded", D + 1)


def formal_divide(P, g, schedule="batch"):
    return fixed_point_divide(P, g, schedule)


def generalized_divide(P, g, engine="auto"):
    """Division with parameters.  'auto' uses the fixed point when there are no
    parameters and the graded solve otherwise (falling back to the fixed point
    when some ord f_i < |alpha_i|, which the graded engine cannot handle)."""
    if engine == "auto":
        if P.n_param == 0:
            engine = "fixed"
        elif all(not f.is_zero() and f.ord() == sum(al) for f, al in zip(P.fs, P.alphas)):
            engine = "graded"
        else:
            engine = "fixed"
    if engine == "graded":
        return graded_divide(P, g)
    return fixed_point_divide(P, g, "batch" if engine == "fixed" else engine)


divide = generalized_divide


def check_result(P, g, res):
    """(ok, reason): identity mod m^{D+1} and the support contracts."""
    D = min(P.trunc, g.trunc)
    nm = P.n_main
    total = g.zero_like()
    for q, f in zip(res.h, P.fs):
        total = total + q.truncate(D) * f.truncate(D)
    diff = (g.truncate(D) - total - res.r).truncate(D)
    if not diff.is_zero():
        return False, f"identity fails: residual {diff.to_str()}"
    for i, q in enumerate(res.h):
        for a in q.supd():
            if not P.in_gamma_i(i, a[:nm]):
                return False, f"supd(h_{i + 1}) contains {a} outside Gamma_{i + 1}"
    for a in res.r.supd():
        if not P.in_gamma(a[:nm]):
            return False, f"supd(r) contains {a} outside Gamma"
    return True, None


def prepare(P, engine="auto"):
    """f-bar_i = u^{alpha_i} - r(u^{alpha_i}); returns (list of f-bar, quotient matrix)."""
    F = P.field
    nm, m = P.n_main, P.n_param
    fbar, H = [], []
    for al in P.alphas:
        mono = P.fs[0]._new({al + (0,) * m: F.one}, exact=True, trunc=P.trunc)
        res = generalized_divide(P, mono, engine)
        fbar.append((mono - res.r).truncate(P.trunc))
        H.append(res.h)
    # unit check: the constant terms of the quotient matrix restricted to
    # divisors of equal order must be invertible
    by_deg = {}
    for i, al in enumerate(P.alphas):
        by_deg.setdefault(sum(al), []).append(i)
    for d, idx in by_deg.items():
        M = [[H[i][j].coefficient((0,) * (nm + m)) for j in idx] for i in idx]
        if det(M, F) == 0:
            raise UnitQuotientCheckFailed(f"quotient block of degree {d} is not invertible at 0", degree=d)
    # certificate: every f_j divides to zero remainder by the f-bar
    Q = DivisionProblem.make(fbar, P.alphas, P.order, P.trunc, strict=False)
    for j, f in enumerate(P.fs):
        try:
            res = generalized_divide(Q, f, engine)
        except JacobianSingular:
            res = graded_divide(Q, f)
        if not res.r.is_zero():
            raise VerificationFailed(f"f_{j + 1} does not reduce to zero by the prepared generators")
    return fbar, H
