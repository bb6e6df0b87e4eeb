"""Resolution of marked ideals (char 0, small dimension) by the inductive
maximal-contact algorithm, run chart by chart.

Each chart carries a stack of frames.  The bottom frame is the marked ideal
being resolved.  A ``marked`` frame either finds its cosupport empty, picks a
center (zero ideal / one free coordinate / monomial case), or pushes a
``step1`` frame holding the coefficient capacitor of its companion ideal.  A
``step1`` frame separates the capacitor from the old exceptional divisors
(restricting to their intersections, largest first) and then restricts to a
hypersurface of maximal contact, each time pushing a ``marked`` frame on the
smaller coordinate subspace.  Frames record the coordinates H they have been
restricted to (their polynomials never involve x_H); a center chosen by the
top frame always contains H, so every frame survives in the charts i not in
its H and is dropped in the others.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import sympy

from .. import exponents as ex
from .. import ideals as P
from ..errors import (
    DriverInvariantViolated,
    InvalidCenter,
    LimitExceeded,
    UnsupportedCenter,
)
from ..fields import QQ
from ..series import default_names
from . import core

MAX_STEPS_PER_CHART = 400


@dataclass
class Frame:
    kind: str  # 'marked' | 'step1'
    gens: list
    mu: int
    H: frozenset
    E: list  # divisor ids (for step1: the old divisors)
    stage_o: int = None  # marked: ord_N when the companion stage started
    pending: tuple = None  # step1: ('1a', S ids) or ('1b', k)
    contact: int = None  # step1: coordinate of the maximal contact hypersurface
    lost: bool = False  # step1: the contact hypersurface left this chart
    new_E: list = field(default_factory=list)  # step1: divisors born after it started

    def copy(self):
        return Frame(self.kind, list(self.gens), self.mu, self.H, list(self.E), self.stage_o, self.pending,
                     self.contact, self.lost, list(self.new_E))

    def summary(self):
        return {"kind": self.kind, "mu": self.mu, "H": sorted(self.H), "generators": len(self.gens)}


@dataclass
class ChartNode:
    id: int
    n: int
    parent: int = None
    depth: int = 0
    entry: dict = None  # {'center': [...], 'chart': i}
    E: list = field(default_factory=list)  # Divisor records
    root_map: list = None
    frames: list = field(default_factory=list)
    ops: list = field(default_factory=list)  # ('translate', k, image poly)
    center: list = None
    status: str = "pending"
    log: list = field(default_factory=list)

    def coord_of(self, div_id):
        for d in self.E:
            if d.id == div_id:
                return d.coord
        return None

    def e_coords(self):
        return {d.coord for d in self.E}


@dataclass
class ResolutionTrace:
    n: int
    names: list
    mu: int
    gens: list
    E: list
    charts: list
    status: str
    field: object = QQ

    @property
    def blowups(self):
        return sum(1 for c in self.charts if c.center is not None)

    def leaves(self):
        return [c for c in self.charts if c.status == "leaf"]

    def max_depth(self):
        return max((c.depth for c in self.leaves()), default=0)

    def children(self, cid):
        return [c for c in self.charts if c.parent == cid]

    def to_json(self):
        F, nm = self.field, self.names
        fmt = lambda p: P.to_str(p, nm, F)
        charts = []
        for c in self.charts:
            charts.append({
                "id": c.id,
                "parent": c.parent,
                "depth": c.depth,
                "entry": None if c.entry is None else {
                    "center": [nm[j] for j in c.entry["center"]],
                    "chart": nm[c.entry["chart"]],
                    "map": {nm[j]: f"{nm[j]}*{nm[c.entry['chart']]}" for j in c.entry["center"] if j != c.entry["chart"]},
                },
                "ops": [{"op": op, "coordinate": nm[k], "image": fmt(img)} for op, k, img in c.ops],
                "E": [{"id": d.id, "coordinate": nm[d.coord], "birth": d.birth} for d in c.E],
                "root_map": [fmt(p) for p in c.root_map],
                "center": None if c.center is None else [nm[j] for j in c.center],
                "status": c.status,
                "log": c.log,
            })
        return {
            "n": self.n,
            "names": list(nm),
            "mu": self.mu,
            "ideal": [fmt(g) for g in self.gens],
            "E": [nm[e] for e in self.E],
            "status": self.status,
            "blowups": self.blowups,
            "max_depth": self.max_depth(),
            "charts": charts,
        }

    def summary(self):
        lines = []
        for leaf in self.leaves():
            path, c = [], leaf
            while c.parent is not None:
                path.append(f"{self.names[c.entry['chart']]}-chart of ({', '.join(self.names[j] for j in c.entry['center'])})")
                c = self.charts[c.parent]
            lines.append(f"chart {leaf.id} (depth {leaf.depth}): " + (" <- ".join(path) if path else "root"))
        return "\n".join(lines)


class _Driver:
    def __init__(self, M, max_blowups, max_charts, check_restriction):
        self.M = M
        self.n = M.n
        self.F = M.field
        self.max_blowups = max_blowups
        self.max_charts = max_charts
        self.check_restriction = check_restriction
        self.charts = []
        self.next_div = 0
        self.blowups = 0

    # --- helpers ------------------------------------------------------------------
    def free(self, frame):
        return [k for k in range(self.n) if k not in frame.H]

    def rigid(self, chart):
        """Coordinates no coordinate change may touch."""
        out = set(chart.e_coords())
        out.update(fr.contact for fr in chart.frames if fr.kind == "step1" and fr.contact is not None)
        return out

    def frame_coords(self, chart, frame):
        return [c for c in (chart.coord_of(i) for i in frame.E) if c is not None]

    def new_chart(self, **kw):
        if len(self.charts) >= self.max_charts:
            raise LimitExceeded(f"more than {self.max_charts} charts", trace=None, max_charts=self.max_charts)
        c = ChartNode(id=len(self.charts), n=self.n, **kw)
        self.charts.append(c)
        return c

    def substitute_all(self, chart, k, image):
        """x_k -> image in every frame (restricted to its H) and in the root map."""
        n, F = self.n, self.F
        for fr in chart.frames:
            img = P.restrict(image, fr.H)
            images = [None] * n
            images[k] = img
            fr.gens = P.span_basis([P.substitute(g, images, n, F) for g in fr.gens], F)
        images = [None] * n
        images[k] = image
        chart.root_map = [P.substitute(p, images, n, F) for p in chart.root_map]
        chart.ops.append(("translate", k, image))

    # --- main loop -------------------------------------------------------------------
    def run(self):
        M = self.M
        E = []
        for e in M.E:
            E.append(core.Divisor(self.next_div, e, 0))
            self.next_div += 1
        root = self.new_chart(E=E, root_map=[P.var(self.n, i, self.F) for i in range(self.n)])
        root.frames = [Frame("marked", P.span_basis(M.gens, self.F), M.mu, frozenset(), [d.id for d in E])]
        queue = deque([root])
        while queue:
            chart = queue.popleft()
            center = self.process(chart)
            if center is None:
                chart.status = "leaf"
                continue
            if self.blowups >= self.max_blowups:
                raise LimitExceeded(f"more than {self.max_blowups} blow-ups", trace=None, max_blowups=self.max_blowups)
            for fr in chart.frames:
                if fr.kind == "step1" and fr.contact is not None and fr.contact not in center:
                    raise DriverInvariantViolated("center leaves the maximal contact hypersurface", chart=chart.id)
            self.blowups += 1
            chart.center = sorted(center)
            chart.status = "blown-up"
            for i in chart.center:
                queue.append(self.child(chart, chart.center, i))
        return "resolved"

    def child(self, chart, center, i):
        n, F = self.n, self.F
        images = core.chart_map(n, center, i)
        frames = []
        for fr in chart.frames:
            if i in fr.H:
                break
            g = fr.copy()
            g.gens = P.span_basis(core.controlled_transform(fr.gens, fr.mu, center, i), F)
            frames.append(g)
        old = [d for d in chart.E if d.coord == i]
        E = [d for d in chart.E if d.coord != i]
        new = core.Divisor(self.next_div, i, chart.depth + 1)
        self.next_div += 1
        E.append(new)
        dropped = {d.id for d in old}
        for fr in frames:
            fr.E = [e for e in fr.E if e not in dropped]
            if fr.kind == "marked":
                fr.E.append(new.id)
            else:
                fr.new_E = [e for e in fr.new_E if e not in dropped] + [new.id]
                if fr.contact == i:
                    fr.contact, fr.lost = None, True
        return self.new_chart(
            parent=chart.id,
            depth=chart.depth + 1,
            entry={"center": list(center), "chart": i},
            E=E,
            root_map=[P.substitute(p, images, n, F) for p in chart.root_map],
            frames=frames,
        )

    def process(self, chart):
        for _ in range(MAX_STEPS_PER_CHART):
            if not chart.frames:
                return None
            fr = chart.frames[-1]
            level = len(chart.frames) - 1
            if fr.kind == "marked":
                out = self.decide_marked(chart, fr, level)
            else:
                out = self.decide_step1(chart, fr, level)
            if out == "done":
                chart.frames.pop()
            elif out is not None and out != "continue":
                return out
        raise DriverInvariantViolated("chart did not settle", chart=chart.id)

    # --- marked frames -----------------------------------------------------------------
    def decide_marked(self, chart, fr, level):
        n, F = self.n, self.F
        free = self.free(fr)
        entry = {"level": level, "frame": "marked", "mu": fr.mu, "H": sorted(fr.H)}
        if not fr.gens:
            if not fr.H:
                raise InvalidCenter("the zero ideal has the whole chart as cosupport")
            entry["decision"] = "zero-ideal"
            chart.log.append(entry)
            return set(fr.H)
        if core.cosupport_empty(fr.gens, fr.mu, n, free, F):
            if fr.stage_o is not None:
                entry["ord_N"] = None
            entry["decision"] = "done"
            chart.log.append(entry)
            return "done"
        if len(free) == 1:
            return self.one_dimensional(chart, fr, free[0], entry)
        coords = self.frame_coords(chart, fr)
        mono, N = core.monomial_part(fr.gens, coords)
        o = core.ord_over_cosupport(N, fr.gens, fr.mu, n, free, F)
        entry["ord_N"] = o
        if fr.stage_o is not None:
            if o >= fr.stage_o:
                raise DriverInvariantViolated("ord_N did not drop after a companion stage", before=fr.stage_o, after=o)
            fr.stage_o = None
        if o == 0:
            exps = [(c, mono[c]) for c in coords]
            S = core.monomial_center(exps, fr.mu)
            entry["decision"] = "monomial"
            entry["exponents"] = {str(c): a for c, a in exps}
            entry["center_order"] = sum(mono[c] for c in S)
            chart.log.append(entry)
            return set(fr.H) | set(S)
        O, muO, _, _ = core.companion_ideal(core.MarkedIdeal(fr.gens, fr.mu, n, coords, F), free, coords)
        cap, c = core.coefficient_capacitor(O, muO, n, free, F)
        entry["decision"] = "companion"
        entry["companion_mu"] = muO
        entry["capacitor_mu"] = c
        chart.log.append(entry)
        fr.stage_o = o
        chart.frames.append(Frame("step1", cap, c, fr.H, list(fr.E)))
        return "continue"

    def one_dimensional(self, chart, fr, t, entry):
        """The free part is a line: blow up the points of multiplicity >= mu one at a time."""
        n, F = self.n, self.F
        x = sympy.Symbol("t")
        polys = [sympy.Poly({(a[t],): sympy.Rational(str(c)) for a, c in g.items()}, x, domain=sympy.QQ) for g in fr.gens]
        g = polys[0]
        for q in polys[1:]:
            g = g.gcd(q)
        roots = []
        for fac, mult in g.factor_list()[1]:
            if mult < fr.mu:
                continue
            if fac.degree() != 1:
                raise UnsupportedCenter("cosupport point is not rational", factor=str(fac.as_expr()))
            a0, a1 = fac.all_coeffs()[::-1]
            roots.append(sympy.Rational(-a0, a1))
        if not roots:
            entry["decision"] = "done"
            chart.log.append(entry)
            return "done"
        roots.sort(key=lambda r: (abs(r), r))
        r = roots[0]
        if r != 0:
            if t in self.rigid(chart):
                raise UnsupportedCenter("cosupport point off the origin on a coordinate that must not move")
            shift = P.add(P.var(n, t, F), P.const(n, F(str(r)), F), F)
            self.substitute_all(chart, t, shift)
            entry["translate"] = str(r)
        entry["decision"] = "point"
        chart.log.append(entry)
        return set(fr.H) | {t}

    # --- step 1 frames ------------------------------------------------------------------
    def decide_step1(self, chart, fr, level):
        n, F = self.n, self.F
        free = self.free(fr)
        entry = {"level": level, "frame": "step1", "mu": fr.mu, "H": sorted(fr.H)}
        T = P.derivative_ideal(fr.gens, fr.mu - 1, n, free, F)
        if P.is_unit_ideal(T, n, F):
            entry["decision"] = "done"
            chart.log.append(entry)
            return "done"
        if fr.lost:
            raise DriverInvariantViolated("cosupport survives off the maximal contact hypersurface", chart=chart.id)
        if fr.pending is not None:
            kind, data = fr.pending
            if kind == "1b":
                raise DriverInvariantViolated("cosupport survived the maximal-contact stage", chart=chart.id)
            S = [chart.coord_of(i) for i in data]
            if None not in S and not P.is_unit_ideal(T + [P.var(n, k, F) for k in S], n, F):
                raise DriverInvariantViolated("cosupport still meets the old divisors", chart=chart.id)
            fr.pending = None
        # 1a: separate the cosupport from the old divisors, deepest intersections first
        old = [c for c in (chart.coord_of(i) for i in fr.E) if c is not None and c not in fr.H]
        ids = {chart.coord_of(i): i for i in fr.E}
        for r in range(len(old), 0, -1):
            for S in combinations(old, r):
                if not P.is_unit_ideal(T + [P.var(n, j, F) for j in S], n, F):
                    entry["decision"] = "separate"
                    entry["divisors"] = list(S)
                    chart.log.append(entry)
                    fr.pending = ("1a", [ids[j] for j in S])
                    gens = P.span_basis([P.restrict(g, S) for g in fr.gens], F)
                    chart.frames.append(Frame("marked", gens, fr.mu, fr.H | set(S), []))
                    return "continue"
        # 1b: restrict to a hypersurface of maximal contact, kept for the rest of the stage
        if fr.contact is None:
            k, c, g = core.tangent_direction(fr.gens, fr.mu, n, free, self.rigid(chart), F)
            if g:
                self.substitute_all(chart, k, P.sub(P.var(n, k, F), P.scale(g, F.inv(c), F), F))
                T = P.derivative_ideal(fr.gens, fr.mu - 1, n, free, F)
            fr.contact = k
            entry["tail_terms"] = len(g)
        k = fr.contact
        if self.check_restriction and not P.radical_contains(T, P.var(n, k, F), n, F):
            raise DriverInvariantViolated("cosupport left the maximal contact hypersurface", coordinate=k)
        restricted = P.span_basis([P.restrict(h, [k]) for h in fr.gens], F)
        if self.check_restriction:
            self.assert_restriction(fr, restricted, k, free)
        entry["decision"] = "maximal-contact"
        entry["coordinate"] = k
        chart.log.append(entry)
        fr.pending = ("1b", k)
        inherited = [i for i in fr.new_E if chart.coord_of(i) not in (None, k)]
        chart.frames.append(Frame("marked", restricted, fr.mu, fr.H | {k}, inherited))
        return "continue"

    def assert_restriction(self, fr, restricted, k, free):
        n, F = self.n, self.F
        inner = [j for j in free if j != k]
        A = [P.restrict(h, [k]) for h in P.derivative_ideal(fr.gens, fr.mu - 1, n, free, F)]
        B = P.derivative_ideal(restricted, fr.mu - 1, n, inner, F)
        A = [a for a in A if a]
        if not all(P.radical_contains(B, a, n, F) for a in A):
            raise DriverInvariantViolated("restriction to the maximal contact hypersurface changed the cosupport", coordinate=k)


def resolve_marked(M, max_blowups=64, max_charts=256, check_restriction=True, names=None):
    """Resolve the marked ideal M; returns a ResolutionTrace.  LimitExceeded
    carries the partial trace."""
    names = list(names or default_names(M.n))
    drv = _Driver(M, max_blowups, max_charts, check_restriction)
    try:
        status = drv.run()
    except LimitExceeded as e:
        e.trace = ResolutionTrace(M.n, names, M.mu, M.gens, list(M.E), drv.charts, "limit-exceeded", M.field)
        raise
    return ResolutionTrace(M.n, names, M.mu, M.gens, list(M.E), drv.charts, status, M.field)
