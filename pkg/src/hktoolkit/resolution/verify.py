"""Independent replay of a resolution trace.

Only the recorded centers, chart choices and coordinate changes are taken from
the trace; every transform, cosupport and invariant is recomputed from the
original marked ideal.
"""

from .. import ideals as P
from ..series import TruncatedSeries
from ..stdbasis import IdealPresentation, hilbert_samuel_at
from . import core

SAMPLE_TS = (0, 1, 2, 3)


class _State:
    def __init__(self, I, E, strict, root_map):
        self.I = I
        self.E = E
        self.strict = strict
        self.root_map = root_map


def _exact(p, n, F):
    deg = max(P.degree(p), 1)
    return TruncatedSeries(dict(p), n, 0, deg, True, F)


def _hs(polys, q, n, F, s_max):
    polys = [p for p in polys if p]
    if not polys:
        return None
    I = IdealPresentation(tuple(_exact(p, n, F) for p in polys))
    return hilbert_samuel_at(I, tuple(q), s_max)


def _center_points(n, center):
    out = []
    if len(center) == n:
        return [tuple([0] * n)]
    for t in SAMPLE_TS:
        out.append(tuple(0 if j in center else t for j in range(n)))
    return out


def verify_resolution(trace, M=None, hs_window=4, variety=None, corrupt=None):
    """Report dict with per-check booleans and a list of failures.

    ``variety``: generators of the ideal of a variety (defaults to the marked
    ideal's generator when it is principal of order mu) for the Bennett / normal-flatness /
    stratum probes.  ``corrupt``: {chart id: center} to replace a recorded
    center (negative control)."""
    n, F = trace.n, trace.field
    mu = trace.mu
    gens = M.gens if M is not None else trace.gens
    E0 = list(M.E) if M is not None else list(trace.E)
    if variety is None and len(gens) == 1 and core.global_order(gens, n, list(range(n)), F) == mu:
        # a hypersurface resolved at its top multiplicity: probe its strict transforms
        variety = gens
    checks = {k: True for k in (
        "centers_in_cosupport", "divisibility", "leaves_resolved", "snc_bookkeeping",
        "ord_monotone", "monomial_drop", "bennett", "normal_flatness", "center_in_stratum",
    )}
    failures = []

    def fail(name, **info):
        checks[name] = False
        failures.append({"check": name, **info})

    states = {}
    ordN = {}
    root_ord = None
    if variety:
        root_ord = core.global_order(variety, n, list(range(n)), F)
    for c in trace.charts:
        if c.parent is None:
            st = _State([dict(g) for g in gens], list(E0), [dict(g) for g in variety] if variety else None,
                         [P.var(n, i, F) for i in range(n)])
        else:
            par = states[c.parent]
            center = c.entry["center"]
            i = c.entry["chart"]
            try:
                I = core.controlled_transform(par.I, mu, center, i)
            except Exception:
                fail("divisibility", chart=c.id)
                break
            E = [e for e in par.E if e != i] + [i]
            strict = core.strict_transform(par.strict, center, i) if par.strict else None
            images = core.chart_map(n, center, i)
            st = _State(I, E, strict, [P.substitute(p, images, n, F) for p in par.root_map])
        for op, k, image in c.ops:
            images = [None] * n
            images[k] = image
            st.I = [P.substitute(g, images, n, F) for g in st.I]
            if st.strict:
                st.strict = [P.substitute(g, images, n, F) for g in st.strict]
            st.root_map = [P.substitute(p, images, n, F) for p in st.root_map]
            if k in st.E:
                fail("snc_bookkeeping", chart=c.id, reason="coordinate change moved an exceptional divisor")
        states[c.id] = st
        # SNC bookkeeping: recorded divisors match the replay
        rec = [d.coord for d in c.E]
        if sorted(rec) != sorted(st.E) or len(set(rec)) != len(rec):
            fail("snc_bookkeeping", chart=c.id, recorded=rec, replayed=st.E)
        # ord of the non-monomial part over the cosupport
        if not core.cosupport_empty(st.I, mu, n, None, F):
            _, N = core.monomial_part(st.I, st.E)
            ordN[c.id] = core.ord_over_cosupport(N, st.I, mu, n, list(range(n)), F)
        else:
            ordN[c.id] = None
        center = c.center
        if corrupt and c.id in corrupt:
            center = corrupt[c.id]
        if center is None:
            if c.status == "leaf" and not core.cosupport_empty(st.I, mu, n, None, F):
                fail("leaves_resolved", chart=c.id)
            continue
        if not core.center_in_cosupport(st.I, mu, n, center, F):
            fail("centers_in_cosupport", chart=c.id, center=list(center))
        for ch in trace.children(c.id):
            if ch.entry["center"] != list(center):
                fail("centers_in_cosupport", chart=ch.id, reason="child records a different center")
        # monomial stage: the new exceptional exponent drops below the center order
        mono = [l for l in c.log if l.get("decision") == "monomial" and l["level"] == 0]
        if mono:
            m, _ = core.monomial_part(st.I, st.E)
            tot = sum(m.get(e, 0) for e in center)
            if tot - mu >= max(m.get(e, 0) for e in center):
                fail("monomial_drop", chart=c.id, center_order=tot)
        if st.strict:
            pts = _center_points(n, center)
            hs = []
            for q in pts:
                h = _hs(st.strict, q, n, F, hs_window)
                hs.append(h)
                ords = [P.order_at(g, q, F) for g in st.strict]
                if min(o for o in ords if o is not None) != root_ord:
                    fail("center_in_stratum", chart=c.id, point=list(q), ord=ords)
            if len(center) < n and len({tuple(h) if h else None for h in hs}) != 1:
                fail("normal_flatness", chart=c.id, profiles=hs)
    # ord_N non-increasing along every branch
    for c in trace.charts:
        if c.parent is None or c.id not in ordN or c.parent not in ordN:
            continue
        a, b = ordN[c.parent], ordN[c.id]
        if b is not None and a is not None and b > a:
            fail("ord_monotone", chart=c.id, before=a, after=b)
    # Bennett: H at the image point dominates H of the strict transform
    if variety:
        for c in trace.charts:
            if c.parent is None or c.id not in states:
                continue
            st = states[c.id]
            pts = [tuple([0] * n)]
            if c.center is not None:
                pts += _center_points(n, c.center)
            for q in dict.fromkeys(pts):
                h_new = _hs(st.strict, q, n, F, hs_window)
                x = tuple(P.evaluate(p, q, F) for p in st.root_map)
                h_old = _hs(variety, x, n, F, hs_window)
                if h_new is None or h_old is None:
                    continue
                if h_new > h_old:
                    fail("bennett", chart=c.id, point=[str(v) for v in q], before=h_old, after=h_new)
    return {"passed": not failures, "checks": checks, "failures": failures,
            "ord_N": {str(k): v for k, v in ordN.items()}}
