"""Global polynomial ideals for the resolution driver.

Polynomials are sparse dicts exponent -> coefficient (FieldSpec elements).
Vector-space pruning (row echelon on coefficient vectors) keeps generator
lists small; ideal questions (unit ideal, membership, radical membership) are
answered with sympy Groebner bases in grevlex order.
"""

from functools import lru_cache
from math import factorial

import sympy

from . import exponents as ex
from .fields import QQ  # noqa: F401  (re-exported)
from .linalg import Echelon


# --- sparse polynomial arithmetic ------------------------------------------------

def clean(p, F=QQ):
    return {a: F.norm(c) for a, c in p.items() if F.norm(c) != 0}


def add(p, q, F=QQ):
    out = dict(p)
    for a, c in q.items():
        v = F.norm(out.get(a, 0) + c)
        if v == 0:
            out.pop(a, None)
        else:
            out[a] = v
    return out


def scale(p, c, F=QQ):
    c = F(c)
    if c == 0:
        return {}
    return {a: F.norm(v * c) for a, v in p.items()}


def sub(p, q, F=QQ):
    return add(p, scale(q, -1, F), F)


def mul(p, q, F=QQ):
    out = {}
    for a, c in p.items():
        for b, d in q.items():
            k = ex.add(a, b)
            out[k] = out.get(k, 0) + c * d
    return clean(out, F)


def power(p, k, n, F=QQ):
    out = {ex.zero(n): F.one}
    for _ in range(k):
        out = mul(out, p, F)
    return out


def const(n, c, F=QQ):
    c = F(c)
    return {ex.zero(n): c} if c != 0 else {}


def var(n, i, F=QQ):
    return {ex.unit(n, i): F.one}


def monomial(a, F=QQ):
    return {tuple(a): F.one}


def degree(p):
    return max((sum(a) for a in p), default=-1)


def order(p):
    return min((sum(a) for a in p), default=None)


def order_at(p, q, F=QQ):
    """ord_q(p) (None for the zero polynomial)."""
    return order(translate_point(p, q, F))


def hasse(p, alpha, F=QQ):
    out = {}
    for b, c in p.items():
        if not ex.dominates(alpha, b):
            continue
        k = c
        for bi, ai in zip(b, alpha):
            if ai:
                k = k * F.binom(bi, ai)
        k = F.norm(k)
        if k != 0:
            out[ex.sub(b, alpha)] = k
    return out


def evaluate(p, q, F=QQ):
    total = F.zero
    for a, c in p.items():
        t = c
        for x, e in zip(q, a):
            if e:
                t = t * F(x) ** e
        total = F.norm(total + t)
    return total


def restrict(p, coords):
    """Set the listed coordinates to zero."""
    return {a: c for a, c in p.items() if not any(a[k] for k in coords)}


def valuation(p, i):
    return min((a[i] for a in p), default=0)


def divide_var_power(p, i, k):
    """p / x_i^k, or None if not divisible."""
    if any(a[i] < k for a in p):
        return None
    return {a[:i] + (a[i] - k,) + a[i + 1:]: c for a, c in p.items()}


def substitute(p, images, n, F=QQ):
    """p(images[0], ..., images[n-1]) with images polynomial dicts (None = unchanged)."""
    cache = {}
    out = {}
    for a, c in p.items():
        term = {ex.zero(n): c}
        for i, e in enumerate(a):
            if not e:
                continue
            if images[i] is None:
                term = {ex.add(b, ex.unit(n, i, e)): v for b, v in term.items()}
                continue
            key = (i, e)
            if key not in cache:
                cache[key] = power(images[i], e, n, F)
            term = mul(term, cache[key], F)
        out = add(out, term, F)
    return out


def blowup_map(p, center, i):
    """x_j -> x_j * x_i for j in center, j != i (a monomial map on exponents)."""
    out = {}
    for a, c in p.items():
        b = list(a)
        for j in center:
            if j != i:
                b[i] += a[j]
        b = tuple(b)
        out[b] = out.get(b, 0) + c
    return {a: c for a, c in out.items() if c != 0}


def translate_point(p, q, F=QQ):
    n = len(q)
    if all(F(x) == 0 for x in q):
        return dict(p)
    images = [add(var(n, i, F), const(n, q[i], F), F) if F(q[i]) != 0 else None for i in range(n)]
    return substitute(p, images, n, F)


# --- spans ---------------------------------------------------------------------------

def _key(a):
    return (sum(a), ex.revlex_key(a))


def span_basis(polys, F=QQ):
    """Reduced echelon basis of the K-span (deterministic)."""
    ech = Echelon(F, key=_key)
    for p in polys:
        if p:
            ech.insert(p)
    out = []
    for piv in ech.pivots():
        out.append(_full_reduce(ech, piv))
    return out


def _full_reduce(ech, piv):
    F = ech.F
    row = dict(ech.rows[piv])
    while True:
        others = [k for k in row if k != piv and k in ech.rows]
        if not others:
            return row
        k = min(others, key=ech.key)
        c = row[k]
        for kk, v in ech.rows[k].items():
            w = F.norm(row.get(kk, 0) - c * v)
            if w == 0:
                row.pop(kk, None)
            else:
                row[kk] = w


def derivative_ideal(gens, i, n, free=None, F=QQ):
    """Generators of D^i(I): all Hasse derivatives of order <= i in the free variables."""
    free = list(range(n)) if free is None else list(free)
    out = []
    for g in gens:
        for k in range(i + 1):
            for al in ex.monomials_of_degree(len(free), k):
                alpha = [0] * n
                for j, e in zip(free, al):
                    alpha[j] = e
                d = hasse(g, tuple(alpha), F)
                if d:
                    out.append(d)
    return span_basis(out, F)


def product_span(A, B, F=QQ):
    return span_basis([mul(a, b, F) for a in A for b in B], F)


def ideal_power(A, k, n, F=QQ):
    out = [const(n, 1, F)]
    for _ in range(k):
        out = product_span(out, A, F)
    return out


# --- Groebner-backed ideal questions -------------------------------------------------------

def _symbols(n):
    return sympy.symbols(f"u0:{n}") if n else ()


def _freeze(polys):
    return tuple(sorted(tuple(sorted((a, str(c)) for a, c in p.items())) for p in polys if p))


@lru_cache(maxsize=4096)
def _groebner(frozen, n, p):
    if not frozen:
        return ()
    if n == 0:
        return ((((), "1"),),)
    gens = _symbols(n)
    dom = sympy.GF(p) if p else sympy.QQ
    polys = [sympy.Poly.from_dict({a: sympy.Rational(c) for a, c in terms}, *gens, domain=dom) for terms in frozen]
    G = sympy.groebner(polys, *gens, order="grevlex", domain=dom)
    return tuple(tuple(sorted((m, str(c)) for m, c in g.as_dict().items())) for g in G.polys)


def groebner(polys, n, F=QQ):
    return _groebner(_freeze(polys), n, F.p)


def is_unit_ideal(polys, n, F=QQ):
    polys = [p for p in polys if p]
    if not polys:
        return False
    if any(len(p) == 1 and ex.zero(n) in p for p in polys):
        return True
    G = groebner(polys, n, F)
    return any(len(g) == 1 and g[0][0] == ex.zero(n) for g in G)


def contains(polys, f, n, F=QQ):
    if not f:
        return True
    polys = [p for p in polys if p]
    if not polys:
        return False
    G = groebner(polys, n, F)
    gens = _symbols(n)
    dom = sympy.GF(F.p) if F.p else sympy.QQ
    Gp = [sympy.Poly.from_dict({a: sympy.Rational(c) for a, c in g}, *gens, domain=dom) for g in G]
    fp = sympy.Poly.from_dict({a: sympy.Rational(str(c)) for a, c in f.items()}, *gens, domain=dom)
    _, r = sympy.reduced(fp, Gp, *gens, order="grevlex", domain=dom)
    return r.is_zero


def radical_contains(polys, f, n, F=QQ):
    """f in rad(I): 1 in (I, 1 - t f) with an extra variable t."""
    if not f:
        return True
    lift = lambda p: {a + (0,): c for a, c in p.items()}
    extra = sub(const(n + 1, 1, F), mul(var(n + 1, n, F), lift(f), F), F)
    return is_unit_ideal([lift(p) for p in polys] + [extra], n + 1, F)


def same_zero_set(A, B, n, F=QQ):
    return all(radical_contains(B, a, n, F) for a in A) and all(radical_contains(A, b, n, F) for b in B)


# --- text ---------------------------------------------------------------------------

def to_str(p, names, F=QQ):
    from .series import format_poly

    return format_poly(p, len(names), F, names)


def factorial_weight(mu):
    return factorial(mu)
