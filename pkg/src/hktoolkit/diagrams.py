"""Staircases (diagrams) in N^n: subdivision, structural predicates, the Gamma and
Delta decompositions, and the Hilbert-Samuel count.

Conventions: N^i is identified with the first i coordinates of N^n; level i of
a vertex is the index of its last nonzero coordinate (1-based).  Vertices are
stored in reverse-lexicographic order, the order used for the subdivision.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import exponents as ex
from .errors import DimensionMismatch, EmptyDiagram, NotFiniteType

MAX_VERTICES = 20


def _minimal(exps):
    exps = sorted(set(exps), key=lambda a: (sum(a), ex.revlex_key(a)))
    out = []
    for a in exps:
        if not any(ex.dominates(v, a) for v in out):
            out.append(a)
    return out


def _proj_diagram_contains(verts, a):
    return any(ex.dominates(v, a) for v in verts)


@dataclass(frozen=True)
class DeltaParts:
    bbar: dict  # (level i, vertex index j) -> sorted list of exponents beta
    B: dict  # level i -> sorted list
    C: dict  # level i -> sorted list of exponents in N^i
    certificate_degree: int


@dataclass(frozen=True)
class Diagram:
    n: int
    vertices: tuple = field(default=())

    @classmethod
    def from_exponents(cls, exps, n=None):
        exps = [tuple(a) for a in exps]
        if n is None:
            if not exps:
                raise DimensionMismatch("cannot infer the dimension of an empty diagram")
            n = len(exps[0])
        if any(len(a) != n for a in exps):
            raise DimensionMismatch("exponents of different dimensions")
        if any(x < 0 for a in exps for x in a):
            raise ValueError("negative exponent")
        verts = sorted(_minimal(exps), key=ex.revlex_key)
        return cls(n, tuple(verts))

    def is_empty(self):
        return not self.vertices

    def __contains__(self, a):
        return _proj_diagram_contains(self.vertices, a)

    def locate(self, a):
        """None for Gamma, otherwise the index j of the subdivision part Delta_j holding a."""
        if len(a) != self.n:
            raise DimensionMismatch("exponent dimension differs from diagram")
        for j, v in enumerate(self.vertices):
            if ex.dominates(v, a):
                return j
        return None

    # --- predicates ---------------------------------------------------------
    def is_monotone(self):
        n = self.n
        for v in self.vertices:
            for i in range(n):
                for j in range(i + 1, n):
                    if v[j] and ex.move(v, i, j) not in self:
                        return False
        return True

    def finite_type_witness(self):
        """None if of finite type, else (vertex, i, j) violating the closed-form test."""
        n = self.n
        for a in self.vertices:
            for i in range(n):
                for j in range(i + 1, n):
                    if a[j] == 0:
                        continue
                    ok = any(
                        v[j] == 0 and all(v[l] <= a[l] for l in range(n) if l not in (i, j))
                        for v in self.vertices
                    )
                    if not ok:
                        return (a, i, j)
        return None

    def is_finite_type(self):
        return self.finite_type_witness() is None

    # --- helpers --------------------------------------------------------------
    @cached_property
    def _bounds(self):
        return [max((v[l] for v in self.vertices), default=0) for l in range(self.n)]

    def _projected(self, i):
        return _minimal([v[:i] for v in self.vertices])

    def _require(self):
        if self.is_empty():
            raise EmptyDiagram("decomposition of the empty diagram (Gamma = N^n)")

    # --- Gamma decomposition ----------------------------------------------------
    @cached_property
    def gamma_parts(self):
        """A_i for i = 0..n: Gamma = disjoint union of A_i x N^{n-i}, each A_i finite.

        A_i = { a in N^i : a not in pi_i(Delta), pi_{i-1}(a) in pi_{i-1}(Delta) }.
        An element reaching the bound M_l in some coordinate can be pushed to
        infinity inside A_i, which certifies that A_i is infinite.
        """
        self._require()
        M = self._bounds
        parts = {0: []}
        for i in range(1, self.n + 1):
            Pi = self._projected(i)
            Pprev = self._projected(i - 1)
            Ai = []
            for a in ex.box(M[:i]):
                if _proj_diagram_contains(Pi, a) or not _proj_diagram_contains(Pprev, a[:-1]):
                    continue
                for l in range(i):
                    if a[l] >= M[l]:
                        raise NotFiniteType(
                            f"A_{i} is infinite: {a} + t*e_{l + 1} stays outside the diagram",
                            witness=list(a), coordinate=l + 1, level=i,
                        )
                Ai.append(a)
            parts[i] = sorted(Ai, key=ex.revlex_key)
        return parts

    def in_gamma_cell(self, a):
        """Index i with pi_i(a) in A_i, or None (only meaningful for finite type)."""
        for i, Ai in self.gamma_parts.items():
            if i and a[:i] in set(Ai):
                return i
        return None

    # --- Delta decomposition ----------------------------------------------------
    def level(self, v):
        lv = 0
        for l, x in enumerate(v):
            if x:
                lv = l + 1
        return max(lv, 1)

    @cached_property
    def delta_parts(self):
        self._require()
        if self.finite_type_witness() is not None:
            a, i, j = self.finite_type_witness()
            raise NotFiniteType("diagram is not of finite type", witness=list(a), pair=[i + 1, j + 1])
        M = self._bounds
        bbar = {}
        for j, v in enumerate(self.vertices):
            i = self.level(v)
            earlier = self.vertices[:j]
            out = []
            for g in ex.box(M[: i - 1]):
                b = tuple(x + y for x, y in zip(v, g + (0,) * (self.n - i + 1)))
                if _proj_diagram_contains(earlier, b):
                    continue
                for l in range(i - 1):
                    if g[l] >= M[l]:
                        raise NotFiniteType(
                            f"Bbar for vertex {v} is infinite", witness=list(v), coordinate=l + 1
                        )
                out.append(b)
            bbar[(i, j)] = sorted(out, key=ex.revlex_key)
        B = {}
        for (i, j), bs in bbar.items():
            B.setdefault(i, []).extend(bs)
        B = {i: sorted(set(bs), key=ex.revlex_key) for i, bs in sorted(B.items())}
        C = {}
        for i in range(1, self.n):
            proj = sorted({b[:i] for b in B.get(i + 1, [])}, key=ex.revlex_key)
            C[i] = proj
        return DeltaParts(bbar, B, C, 0)

    def delta_cells(self, a):
        """All (level, vertex index, beta) cells containing a."""
        out = []
        for (i, j), bs in self.delta_parts.bbar.items():
            for b in bs:
                if a[: i - 1] == b[: i - 1] and all(x >= y for x, y in zip(a[i - 1 :], b[i - 1 :])):
                    out.append((i, j, b))
        return out

    def c_direct(self, i):
        """C_i computed from its definition: a in pi_i(Delta) with (a, 0) not in Delta."""
        M = self._bounds
        Pi = self._projected(i)
        out = []
        for a in ex.box(M[:i]):
            if _proj_diagram_contains(Pi, a) and (a + (0,) * (self.n - i)) not in self:
                out.append(a)
        return sorted(out, key=ex.revlex_key)

    def partition_certificate(self, D):
        """Check the Gamma / Delta-part partition for all |a| <= D; returns (ok, first failure)."""
        gp = self.gamma_parts
        gsets = {i: set(A) for i, A in gp.items()}
        for a in ex.monomials_up_to(self.n, D):
            cells = [("A", i) for i in range(1, self.n + 1) if a[:i] in gsets[i]]
            cells += [("B",) + c[:2] for c in self.delta_cells(a)]
            if len(cells) != 1:
                return False, {"alpha": list(a), "cells": [list(map(str, c)) for c in cells]}
            in_delta = a in self
            if in_delta != (cells[0][0] == "B"):
                return False, {"alpha": list(a), "cells": [str(cells[0])], "in_delta": in_delta}
            if in_delta and cells[0][2] != self.locate(a):
                return False, {"alpha": list(a), "subdivision": self.locate(a), "cell_vertex": cells[0][2]}
        return True, None

    # --- numerical invariants --------------------------------------------------
    def d(self):
        """d(Delta): max total degree over the union of the A_i and Bbar_i."""
        gp = self.gamma_parts
        dp = self.delta_parts
        degs = [sum(a) for A in gp.values() for a in A]
        degs += [sum(b) for bs in dp.bbar.values() for b in bs]
        return max(degs, default=0)

    @cached_property
    def _joins(self):
        if len(self.vertices) > MAX_VERTICES:
            raise ValueError(f"more than {MAX_VERTICES} vertices")
        terms = {ex.zero(self.n): 1}
        for v in self.vertices:
            new = dict(terms)
            for J, c in terms.items():
                K = ex.join(J, v)
                new[K] = new.get(K, 0) - c
            terms = {J: c for J, c in new.items() if c}
        return terms

    def hilbert_samuel(self, s):
        """#{a not in Delta : |a| <= s}, exact via inclusion-exclusion over vertex joins."""
        n = self.n
        total = 0
        for J, c in self._joins.items():
            m = s - sum(J)
            if m >= 0:
                total += c * comb(m + n, n)
        return total

    def hs_profile(self, s_max):
        return [self.hilbert_samuel(s) for s in range(s_max + 1)]

    def max_join_degree(self):
        return max(sum(J) for J in self._joins)

    def to_json(self, hs_len=None):
        out = {"n": self.n, "vertices": [list(v) for v in self.vertices]}
        if self.vertices and self.is_finite_type():
            out["A"] = {str(i): [list(a) for a in A] for i, A in self.gamma_parts.items() if i}
            dp = self.delta_parts
            out["Bbar"] = {f"{i},{j + 1}": [list(b) for b in bs] for (i, j), bs in dp.bbar.items()}
            out["C"] = {str(i): [list(a) for a in c] for i, c in dp.C.items()}
            out["d"] = self.d()
        else:
            out["finite_type"] = self.is_finite_type() if self.vertices else None
        if hs_len is None:
            hs_len = hs_window(self, self)[0] + 1
        out["HS"] = self.hs_profile(hs_len - 1)
        return out


def hs_window(d1, d2):
    """s* beyond which both Hilbert-Samuel functions are pinned polynomials."""
    if d1.n != d2.n:
        raise DimensionMismatch("diagrams of different dimension")
    n = d1.n
    cand = [0]
    for D in (d1, d2):
        cand += [sum(v) for v in D.vertices]
        cand.append(D.max_join_degree() - n)
        if D.vertices and D.is_finite_type():
            cand.append(D.d())
    return max(cand) + n + 1, n


def hs_compare(d1, d2):
    """(-1|0|1, s*) comparing H(d1), H(d2) lexicographically as sequences."""
    s_star, _ = hs_window(d1, d2)
    for s in range(s_star + 1):
        a, b = d1.hilbert_samuel(s), d2.hilbert_samuel(s)
        if a != b:
            return (-1 if a < b else 1), s_star
    return 0, s_star


def empty(n):
    return Diagram(n, ())


# functional aliases
def from_exponents(exps, n=None):
    return Diagram.from_exponents(exps, n)


def gamma_decomposition(D):
    return D.gamma_parts


def delta_decomposition(D, check_degree=10):
    parts = D.delta_parts
    ok, bad = D.partition_certificate(check_degree)
    if not ok:
        raise AssertionError(f"partition certificate failed: {bad}")
    return DeltaParts(parts.bbar, parts.B, parts.C, check_degree)


def hilbert_samuel(D, s):
    return D.hilbert_samuel(s)


def hs_profile(D, s_max):
    return D.hs_profile(s_max)


def d_of(D):
    return D.d()
