"""Marked ideals, cosupports, blow-up charts and the ideals built from them
(controlled/strict transforms, companion ideal, coefficient capacitor,
tangent directions, monomial centers).

Everything is global on an affine chart A^n with coordinates x_0..x_{n-1};
exceptional divisors are coordinate hyperplanes, centers are coordinate
subspaces V(x_j : j in C).
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from .. import exponents as ex
from .. import ideals as P
from ..errors import (
    EmptyCosupport,
    GuardExceeded,
    InadmissibleCenter,
    InvalidCenter,
    NoTangentDirection,
    UnsupportedCenter,
)
from ..fields import QQ

CAPACITOR_GUARD = 3


@dataclass
class MarkedIdeal:
    """(I, mu) on A^n with an ordered list of exceptional coordinates E."""

    gens: list
    mu: int
    n: int
    E: list = field(default_factory=list)
    field: object = QQ

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError("mu must be >= 1")
        self.gens = [g for g in self.gens if g]

    @classmethod
    def parse(cls, text, mu, names, E=(), field=QQ):
        from ..series import parse_poly

        gens = []
        for part in _split(text):
            s = parse_poly(part, names, field, 64, 0)
            gens.append(dict(s.coeffs))
        E = [names.index(e) if isinstance(e, str) else int(e) for e in E]
        return cls(gens, mu, len(names), E, field)


def _split(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",;" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return [s.strip() for s in out if s.strip()]


# --- cosupport -------------------------------------------------------------------------

def cosupport(M, free=None):
    """Generators of D^{mu-1}(I); the cosupport is their common zero set."""
    return P.derivative_ideal(M.gens, M.mu - 1, M.n, free, M.field)


def cosupport_empty(gens, mu, n, free=None, F=QQ):
    return P.is_unit_ideal(P.derivative_ideal(gens, mu - 1, n, free, F), n, F)


def in_cosupport(M, q):
    return all(P.evaluate(g, q, M.field) == 0 for g in cosupport(M))


def center_in_cosupport(gens, mu, n, center, F=QQ):
    """V(x_C) inside V(D^{mu-1}(I)): every generator vanishes once x_C = 0."""
    return all(not P.restrict(g, center) for g in P.derivative_ideal(gens, mu - 1, n, None, F))


# --- blow-ups ------------------------------------------------------------------------------

@dataclass
class Divisor:
    id: int
    coord: int
    birth: int


def chart_map(n, center, i):
    """Images of the old coordinates in chart i of the blow-up of V(x_C)."""
    images = [None] * n
    for j in center:
        if j != i:
            images[j] = {ex.add(ex.unit(n, j), ex.unit(n, i)): QQ.one}
    return images


def controlled_transform(gens, mu, center, i):
    """x_i^{-mu} sigma*(I) in chart i; InadmissibleCenter when not divisible."""
    out = []
    for g in gens:
        h = P.divide_var_power(P.blowup_map(g, center, i), i, mu)
        if h is None:
            raise InadmissibleCenter(f"pull-back not divisible by x{i}^{mu}", chart=i, mu=mu)
        out.append(h)
    return out


def strict_transform(gens, center, i):
    """Divide each pulled-back generator by its own maximal power of x_i."""
    out = []
    for g in gens:
        h = P.blowup_map(g, center, i)
        out.append(P.divide_var_power(h, i, P.valuation(h, i)))
    return out


def blow_up(chart, center):
    """Chart records (i, images) for the blow-up of V(x_C); one chart per center coordinate."""
    center = sorted(set(center))
    if not center or any(not 0 <= j < chart.n for j in center):
        raise InvalidCenter("center must be a nonempty set of chart coordinates", center=center)
    return [(i, chart_map(chart.n, center, i)) for i in center]


# --- exceptional monomial / companion ideal -----------------------------------------------

def monomial_part(gens, coords):
    """Exponents m_e of M(I) = prod x_e^{m_e} over the given E coordinates, and N(I)."""
    m = {e: min(P.valuation(g, e) for g in gens) for e in coords}
    N = []
    for g in gens:
        h = g
        for e, k in m.items():
            if k:
                h = P.divide_var_power(h, e, k)
        N.append(h)
    return m, N


def ord_over_cosupport(N, gens, mu, n, free, F=QQ):
    """max ord_x(N) over x in cosupp(I, mu): least k with D^k(N) + D^{mu-1}(I) = (1)."""
    base = P.derivative_ideal(gens, mu - 1, n, free, F)
    top = max(P.degree(g) for g in N)
    for k in range(top + 1):
        if P.is_unit_ideal(P.derivative_ideal(N, k, n, free, F) + base, n, F):
            return k
    return top + 1


def global_order(N, n, free, F=QQ):
    """max ord_x(N) over all points: least k with D^k(N) = (1)."""
    top = max(P.degree(g) for g in N)
    for k in range(top + 1):
        if P.is_unit_ideal(P.derivative_ideal(N, k, n, free, F), n, F):
            return k
    return top + 1


def companion_ideal(M, free=None, coords=None):
    """(O, mu_O, tag, ord_N).  tag is 'monomial' when N(I) is a unit along the
    cosupport, otherwise 'maximal-order'.  ord_N is the maximal order of N(I)
    on the cosupport (on the whole chart when the cosupport is empty)."""
    n, F = M.n, M.field
    free = list(range(n)) if free is None else free
    coords = M.E if coords is None else coords
    m, N = monomial_part(M.gens, coords)
    if cosupport_empty(M.gens, M.mu, n, free, F):
        # nothing left to resolve; report the order of N over the whole chart
        o = global_order(N, n, free, F)
    else:
        o = ord_over_cosupport(N, M.gens, M.mu, n, free, F)
    if o == 0:
        return None, None, "monomial", 0
    if o >= M.mu:
        return P.span_basis(N, F), o, "maximal-order", o
    mono = [0] * n
    for e, k in m.items():
        mono[e] = k * o
    gens = P.ideal_power(P.span_basis(N, F), M.mu - o, n, F) + [P.monomial(mono, F)]
    return P.span_basis(gens, F), o * (M.mu - o), "maximal-order", o


def coefficient_capacitor(gens, mu, n, free=None, F=QQ, guard=CAPACITOR_GUARD):
    """Generators of the degree-mu! part of the Rees algebra generated by the
    marked derivatives (D^a(I), mu - a): minimal products of factors with
    weight sum >= mu!."""
    if mu > guard:
        raise GuardExceeded(f"capacitor needs mu <= {guard}, got {mu}", mu=mu)
    c = factorial(mu)
    layers = {a: P.derivative_ideal(gens, a, n, free, F) for a in range(mu)}
    out = []
    for ms in _weight_multisets(mu, c):
        prod = [P.const(n, 1, F)]
        for a in ms:
            prod = P.product_span(prod, layers[a], F)
        out.extend(prod)
    return P.span_basis(out, F), c


def _weight_multisets(mu, c):
    """Nondecreasing tuples of derivative orders a (weight mu - a) whose weight
    sum reaches c but drops below c without the lightest factor."""
    out = []

    def rec(prefix, lo, total):
        if total >= c:
            if total - min(mu - a for a in prefix) < c:
                out.append(tuple(prefix))
            return
        for a in range(lo, mu):
            rec(prefix + [a], a, total + mu - a)

    rec([], 0, 0)
    return out


# --- tangent directions -------------------------------------------------------------------

def tangent_direction(gens, mu, n, free, rigid=(), F=QQ):
    """(k, c, g) with c*x_k + g in D^{mu-1}(I), g free of x_k, k a free
    coordinate.  Coordinates in ``rigid`` (exceptional or already used as
    maximal contact) may only be chosen when g = 0, since they must not move.
    Prefers movable coordinates, then fewest terms, then lowest index.

    x_k -> x_k - g/c is then an automorphism of the chart making V(u) a
    coordinate hyperplane.  When every element with a linear term also has
    x_k in its tail no such polynomial change exists: UnsupportedCenter."""
    T = P.derivative_ideal(gens, mu - 1, n, free, F)
    best, linear = None, False
    for u in T:
        for k in free:
            lin = ex.unit(n, k)
            if lin not in u:
                continue
            linear = True
            if any(a[k] for a in u if a != lin):
                continue
            if k in rigid and len(u) > 1:
                continue
            cand = (k in rigid, len(u), k)
            if best is None or cand < best[0]:
                g = {a: v for a, v in u.items() if a != lin}
                best = (cand, (k, u[lin], g))
    if best is None and linear:
        raise UnsupportedCenter("maximal contact hypersurface is not a coordinate hyperplane after a triangular change")
    if best is None and any(ex.zero(n) in u for u in T):
        raise UnsupportedCenter("cosupport lies away from the chart origin; its maximal contact hypersurface is not a coordinate hyperplane")
    if best is None:
        raise NoTangentDirection("no element of D^{mu-1}(I) has a linear term in a free coordinate")
    return best[1]


# --- monomial centers -----------------------------------------------------------------------

def monomial_center(exps, mu):
    """Subset S of the E coordinates (listed oldest first, with exponents) with
    sum a_S >= mu and every proper sub-sum < mu.  Among candidates the one whose
    positions in the age order are lexicographically smallest wins."""
    coords = [e for e, a in exps if a > 0]
    a = dict(exps)
    best = None
    for r in range(1, len(coords) + 1):
        for S in combinations(range(len(coords)), r):
            tot = sum(a[coords[j]] for j in S)
            if tot < mu or any(tot - a[coords[j]] >= mu for j in S):
                continue
            if best is None or S < best:
                best = S
    if best is None:
        raise EmptyCosupport("no subset of exceptional exponents reaches mu", mu=mu)
    return [coords[j] for j in best]
