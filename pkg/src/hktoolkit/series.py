"""Truncated multivariate power series over Q or F_p.

A ``TruncatedSeries`` stores a sparse map exponent -> coefficient.  The first
``n_main`` variables are the u-variables, the last ``n_param`` are the
v-parameters.  Everything of total degree > ``trunc`` is discarded; the
``exact`` flag records whether the stored polynomial is the genuine object
(Exact) or only its class mod m^{D+1} (ModTrunc).
"""

from dataclasses import dataclass, field
from itertools import product as iproduct
import re

from . import exponents as ex
from .errors import DimensionMismatch, NotExact, ParseError, SingularMatrix, ZeroSeries
from .fields import QQ, FieldSpec

DEFAULT_TRUNC = 12


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: dict
    n_main: int
    n_param: int = 0
    trunc: int = DEFAULT_TRUNC
    exact: bool = True
    field: FieldSpec = QQ

    @property
    def n(self):
        return self.n_main + self.n_param

    # --- constructors -----------------------------------------------------
    @classmethod
    def build(cls, terms, n_main, n_param=0, trunc=DEFAULT_TRUNC, field=QQ, exact=True):
        """Collect (exponent, coeff) pairs, dropping zeros and terms above trunc."""
        F = field
        acc = {}
        for a, c in (terms.items() if isinstance(terms, dict) else terms):
            a = tuple(a)
            if len(a) != n_main + n_param:
                raise DimensionMismatch(f"exponent {a} for {n_main + n_param} variables")
            if sum(a) > trunc:
                if F(c) != 0:
                    exact = False
                continue
            acc[a] = F.norm(acc.get(a, F.zero) + F(c))
        return cls({a: c for a, c in acc.items() if c != 0}, n_main, n_param, trunc, exact, F)

    def _new(self, coeffs, exact=None, trunc=None):
        return TruncatedSeries(
            coeffs,
            self.n_main,
            self.n_param,
            self.trunc if trunc is None else trunc,
            self.exact if exact is None else exact,
            self.field,
        )

    def zero_like(self):
        return self._new({}, exact=True)

    def const_like(self, c):
        c = self.field(c)
        return self._new({ex.zero(self.n): c} if c != 0 else {}, exact=True)

    def monomial_like(self, a, c=1):
        c = self.field(c)
        if sum(a) > self.trunc:
            return self._new({}, exact=False)
        return self._new({tuple(a): c} if c != 0 else {}, exact=True)

    # --- basic predicates ---------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"TruncatedSeries({self.to_str()!r}, n={self.n}, D={self.trunc}, {'Exact' if self.exact else 'ModTrunc'})"

    def _compat(self, other):
        if self.n_main != other.n_main or self.n_param != other.n_param:
            raise DimensionMismatch(f"series dimensions ({self.n_main},{self.n_param}) vs ({other.n_main},{other.n_param})")
        self.field.check_same(other.field)

    # --- ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.const_like(other)
        self._compat(other)
        D = min(self.trunc, other.trunc)
        F = self.field
        out = {}
        lost = False
        for src in (self.coeffs, other.coeffs):
            for a, c in src.items():
                if sum(a) > D:
                    lost = True
                    continue
                out[a] = F.norm(out.get(a, 0) + c)
        out = {a: c for a, c in out.items() if c != 0}
        return TruncatedSeries(out, self.n_main, self.n_param, D, self.exact and other.exact and not lost, F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({a: F.norm(-c) for a, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.const_like(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        F = self.field
        c = F(c)
        if c == 0:
            return self._new({})
        return self._new({a: F.norm(v * c) for a, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._compat(other)
        D = min(self.trunc, other.trunc)
        F = self.field
        p = F.p
        out = {}
        lost = False
        items2 = [(a, sum(a), c) for a, c in other.coeffs.items()]
        for a, c in self.coeffs.items():
            da = sum(a)
            for b, db, d in items2:
                if da + db > D:
                    lost = True
                    continue
                k = tuple(x + y for x, y in zip(a, b))
                v = out.get(k, 0) + c * d
                out[k] = v % p if p else v
        out = {a: c for a, c in out.items() if c != 0}
        # a product of two ModTrunc classes is still well defined mod m^{D+1}
        return TruncatedSeries(out, self.n_main, self.n_param, D, self.exact and other.exact and not lost, F)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.const_like(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, D):
        """Drop terms of degree > D (the bound of a ModTrunc class can only shrink)."""
        kept = {a: c for a, c in self.coeffs.items() if sum(a) <= D}
        exact = self.exact and len(kept) == len(self.coeffs)
        trunc = D if (self.exact or D <= self.trunc) else self.trunc
        return self._new(kept, exact=exact, trunc=trunc)

    def with_trunc(self, D):
        return self.truncate(D)

    # --- supports, orders, leading terms ----------------------------------
    def supp(self):
        return set(self.coeffs)

    def ord(self):
        if not self.coeffs:
            raise ZeroSeries("ord of the zero series")
        return min(sum(a) for a in self.coeffs)

    def hasse(self, alpha):
        """Hasse derivative D_{u^alpha}: coefficient C(b, alpha) c_b at b - alpha."""
        alpha = tuple(alpha)
        if len(alpha) != self.n:
            raise DimensionMismatch("derivative exponent has wrong dimension")
        F = self.field
        out = {}
        for b, c in self.coeffs.items():
            if not ex.dominates(alpha, b):
                continue
            k = c
            for bi, ai in zip(b, alpha):
                if ai:
                    k = k * F.binom(bi, ai)
                    if F.p:
                        k %= F.p
                    if k == 0:
                        break
            if k != 0:
                out[ex.sub(b, alpha)] = k
        trunc = self.trunc if self.exact else self.trunc - sum(alpha)
        return TruncatedSeries(out, self.n_main, self.n_param, trunc, self.exact, F)

    def supd(self):
        """{alpha : D_{u^alpha} f != 0}.  No cancellation can occur: distinct b give distinct b - alpha."""
        F = self.field
        out = set()
        for b in self.coeffs:
            for alpha in ex.box(list(b)):
                if alpha in out:
                    continue
                if all(F.binom(bi, ai) != 0 for bi, ai in zip(b, alpha)):
                    out.add(alpha)
        return out

    def leading(self, order):
        """(exp_T(f), ord_T(f) value vector, coefficient) for a total order T."""
        if not self.coeffs:
            raise ZeroSeries("leading term of the zero series")
        order = order.completed()
        a = min(self.coeffs, key=order.value)
        return a, order.value(a), self.coeffs[a]

    def exp(self, order):
        return self.leading(order)[0]

    def coefficient(self, a):
        return self.coeffs.get(tuple(a), self.field.zero)

    def homogeneous_part(self, d):
        return self._new({a: c for a, c in self.coeffs.items() if sum(a) == d}, exact=True)

    def at_param_zero(self):
        """f(u, 0): keep terms without v-variables."""
        nm = self.n_main
        return self._new({a: c for a, c in self.coeffs.items() if not any(a[nm:])})

    def u_part(self, a):
        return a[: self.n_main]

    # --- evaluation and coordinate changes ----------------------------------
    def evaluate(self, q):
        F = self.field
        q = [F(x) for x in q]
        if not self.exact and any(x != 0 for x in q):
            raise NotExact("evaluating a truncated series away from the origin")
        total = F.zero
        for a, c in self.coeffs.items():
            t = c
            for x, e in zip(q, a):
                if e:
                    t = t * x**e
            total = F.norm(total + t)
        return total

    def translate(self, q):
        """f(u + q): recenter at the point q (Exact polynomials only)."""
        F = self.field
        q = [F(x) for x in q]
        if len(q) != self.n:
            raise DimensionMismatch("translation point has wrong dimension")
        if all(x == 0 for x in q):
            return self
        if not self.exact:
            raise NotExact("cannot recenter a series known only mod m^{D+1}")
        out = {}
        for a, c in self.coeffs.items():
            # expand prod (u_i + q_i)^{a_i}
            factors = []
            for x, e in zip(q, a):
                factors.append([(k, F.binom(e, k) * x ** (e - k)) for k in range(e + 1)] if x != 0 else [(e, F.one)])
            for combo in iproduct(*factors):
                b = tuple(k for k, _ in combo)
                v = c
                for _, w in combo:
                    v = v * w
                out[b] = F.norm(out.get(b, 0) + v)
        deg = max((sum(a) for a in out), default=0)
        res = TruncatedSeries.build(out, self.n_main, self.n_param, max(self.trunc, deg), F)
        return res._new(res.coeffs, trunc=self.trunc) if deg <= self.trunc else res

    def initial_form(self, q=None):
        g = self.translate(q) if q is not None else self
        if g.is_zero():
            return g
        return g.homogeneous_part(g.ord())

    def substitute(self, images):
        """Compose with u_i -> images[i] (series without constant term, or Exact polynomials)."""
        if len(images) != self.n:
            raise DimensionMismatch("need one image per variable")
        if not self.exact and any(im.coeffs.get(ex.zero(self.n), 0) != 0 for im in images):
            raise NotExact("substituting non-local images into a truncated series")
        out = self._new({}, exact=True)
        cache = [dict() for _ in images]

        def power(i, e):
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        for a, c in self.coeffs.items():
            term = self.const_like(1)
            for i, e in enumerate(a):
                if e:
                    term = term * power(i, e)
            out = out + term.scale(c)
        if not self.exact:
            out = out._new(out.coeffs, exact=False)
        return out

    def substitute_linear(self, M):
        """u -> M u, i.e. u_i -> sum_j M[i][j] u_j; M must be invertible."""
        F = self.field
        M = [[F(x) for x in row] for row in M]
        if len(M) != self.n or any(len(r) != self.n for r in M):
            raise DimensionMismatch("matrix size does not match the number of variables")
        from .linalg import det

        if det(M, F) == 0:
            raise SingularMatrix("substitution matrix is singular")
        images = []
        for i in range(self.n):
            images.append(
                TruncatedSeries({ex.unit(self.n, j): M[i][j] for j in range(self.n) if M[i][j] != 0},
                                self.n_main, self.n_param, self.trunc, True, F)
            )
        return self.substitute(images)

    # --- text / json --------------------------------------------------------
    def to_str(self, names=None):
        return format_poly(self.coeffs, self.n, self.field, names)

    def to_json(self):
        F = self.field
        terms = sorted(self.coeffs.items(), key=lambda t: ex.revlex_key(t[0]))
        return {
            "n_main": self.n_main,
            "n_param": self.n_param,
            "trunc": self.trunc,
            "exact": self.exact,
            "field": str(F),
            "terms": [[list(a), F.to_str(c)] for a, c in terms],
        }

    @classmethod
    def from_json(cls, obj):
        from .fields import parse_field

        F = parse_field(obj["field"])
        s = cls.build(((tuple(a), c) for a, c in obj["terms"]), obj["n_main"], obj["n_param"], obj["trunc"], F)
        return s._new(s.coeffs, exact=obj["exact"])


def default_names(n):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def format_poly(coeffs, n, F=QQ, names=None):
    if not coeffs:
        return "0"
    names = names or default_names(n)
    terms = sorted(coeffs.items(), key=lambda t: (sum(t[0]), ex.revlex_key(t[0])))
    out = []
    for a, c in terms:
        s = F.to_str(c)
        neg = s.startswith("-")
        s = s.lstrip("-")
        mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(a) if e)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>\*\*|[-+*^()]))")


def _pos(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            line, col = _pos(text, i)
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        start = m.start(m.lastgroup)
        toks.append((m.lastgroup, m.group(m.lastgroup), start))
        i = m.end()
    return toks


def parse_poly(text, names, field=QQ, trunc=DEFAULT_TRUNC, n_param=0):
    """Parse ``c * x1^a1 ... xn^an`` terms joined by + / -; returns an Exact series.

    ``names`` lists all variable names (u-variables first, then the last
    ``n_param`` parameters).  Coefficients may be rationals ``p/q``.
    """
    from fractions import Fraction

    names = list(names)
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    toks = _tokenize(text)
    pos = 0
    terms = []

    def err(msg, k=None):
        off = toks[k][2] if k is not None and k < len(toks) else len(text)
        line, col = _pos(text, off)
        raise ParseError(msg, line, col)

    if not toks:
        err("empty polynomial")
    while pos < len(toks):
        sign = 1
        while pos < len(toks) and toks[pos][0] == "op" and toks[pos][1] in "+-":
            if toks[pos][1] == "-":
                sign = -sign
            pos += 1
        coeff = Fraction(sign)
        expo = [0] * n
        seen = False
        while pos < len(toks):
            kind, val, _ = toks[pos]
            if kind == "op" and val == "*":
                if not seen:
                    err("dangling '*'", pos)
                pos += 1
                continue
            if kind == "op" and val in "+-":
                break
            if kind == "num":
                if re.search(r"/0+$", val):
                    err("zero denominator", pos)
                coeff *= Fraction(val)
                pos += 1
                seen = True
            elif kind == "id":
                if val not in index:
                    err(f"unknown variable {val!r} (expected one of {', '.join(names)})", pos)
                e = 1
                pos += 1
                if pos < len(toks) and toks[pos][0] == "op" and toks[pos][1] in ("^", "**"):
                    pos += 1
                    if pos >= len(toks) or toks[pos][0] != "num" or "/" in toks[pos][1]:
                        err("expected a natural exponent", pos)
                    e = int(toks[pos][1])
                    pos += 1
                expo[index[val]] += e
                seen = True
            else:
                err(f"unexpected token {val!r}", pos)
        if not seen:
            err("expected a term", pos)
        terms.append((tuple(expo), coeff))
    deg = max(sum(a) for a, _ in terms)
    D = max(trunc, deg)
    s = TruncatedSeries.build(terms, n - n_param, n_param, D, field)
    if deg > trunc:
        s = s.truncate(trunc)
    return s


def infer_names(texts, params=()):
    """Pick variable names for a set of polynomial strings.

    ``x1..xk`` style names are numbered; otherwise x, y, z, w come first and
    any other identifiers follow alphabetically.  Parameters go last.
    """
    ids = set()
    for t in texts:
        for kind, val, _ in _tokenize(t):
            if kind == "id":
                ids.add(val)
    ids -= set(params)
    numbered = [i for i in ids if re.fullmatch(r"x\d+", i)]
    if numbered and len(numbered) == len(ids):
        k = max(int(i[1:]) for i in numbered)
        main = [f"x{i + 1}" for i in range(k)]
    else:
        pref = [c for c in ("x", "y", "z", "w") if c in ids]
        main = pref + sorted(ids - set(pref))
    return main + list(params)


def poly(text, names=None, field=QQ, trunc=DEFAULT_TRUNC, params=()):
    """Convenience wrapper: parse with inferred names."""
    if names is None:
        names = infer_names([text], params)
    else:
        names = [nm for nm in names if nm not in params] + list(params)
    return parse_poly(text, names, field, trunc, n_param=len(params))
