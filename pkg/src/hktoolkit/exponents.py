"""Exponent lattice N^n and monomial gradings given by tuples of linear forms.

Exponents are plain tuples of non-negative ints.  A ``MonomialOrder`` is a
tuple of linear forms with non-negative coefficients; exponents are compared
lexicographically on their value vectors (T_1(a), ..., T_k(a)).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
import re

from .errors import DimensionMismatch, InvalidOrder, ParseError

Exponent = tuple


def exponent(coords):
    a = tuple(int(c) for c in coords)
    if any(c < 0 for c in a):
        raise ValueError(f"negative exponent entry in {a}")
    return a


def degree(a):
    return sum(a)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    """a - b; entries may be negative (callers check)."""
    return tuple(x - y for x, y in zip(a, b))


def dominates(a, b):
    """True when a <= b coordinatewise, i.e. b lies in a + N^n."""
    return all(x <= y for x, y in zip(a, b))


def join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def unit(n, i, k=1):
    return tuple(k if j == i else 0 for j in range(n))


def zero(n):
    return (0,) * n


def move(a, i, j):
    """R_ij: transfer the j-th coordinate onto the i-th (0-based, i < j)."""
    b = list(a)
    b[i] += b[j]
    b[j] = 0
    return tuple(b)


def revlex_key(a):
    """Sort key for the reverse lexicographic order T_r = (x_n, ..., x_1)."""
    return tuple(reversed(a))


def monomials_of_degree(n, d):
    """All exponents of total degree d in n variables."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_up_to(n, d):
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


def box(bounds):
    """All exponents a with 0 <= a_l <= bounds[l]."""
    if not bounds:
        yield ()
        return
    for rest in box(bounds[1:]):
        for x in range(bounds[0] + 1):
            yield (x,) + rest


def _rank(rows):
    # small exact rank over Q, only used for totality
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class MonomialOrder:
    """A tuple of non-negative linear forms on N^n, stored with integer coefficients."""

    forms: tuple
    n: int = field(init=False)

    def __post_init__(self):
        if not self.forms:
            raise InvalidOrder("empty form list")
        cleared = []
        n = len(self.forms[0])
        for f in self.forms:
            if len(f) != n:
                raise DimensionMismatch("forms of different lengths")
            q = [Fraction(c) for c in f]
            if any(c < 0 for c in q):
                raise InvalidOrder(f"negative coefficient in form {f}")
            den = lcm(*(c.denominator for c in q)) if q else 1
            cleared.append(tuple(int(c * den) for c in q))
        object.__setattr__(self, "forms", tuple(cleared))
        object.__setattr__(self, "n", n)

    def value(self, a):
        if len(a) != self.n:
            raise DimensionMismatch(f"exponent {a} has dimension {len(a)}, order has {self.n}")
        return tuple(sum(c * x for c, x in zip(f, a)) for f in self.forms)

    # cached sort key, same as value but without the dimension check
    def key(self, a):
        return tuple(sum(c * x for c, x in zip(f, a)) for f in self.forms)

    def compare(self, a, b):
        """-1, 0, 1 for less / equal / greater."""
        va, vb = self.value(a), self.value(b)
        return (va > vb) - (va < vb)

    @cached_property
    def positive(self):
        return all(any(f[j] > 0 for f in self.forms) for j in range(self.n))

    @cached_property
    def normalized(self):
        return all(c == 1 for c in self.forms[0])

    @cached_property
    def total(self):
        return _rank(self.forms) == self.n

    @cached_property
    def monotone(self):
        vals = [self.value(unit(self.n, i)) for i in range(self.n)]
        return all(vals[i] <= vals[j] for i in range(self.n) for j in range(i + 1, self.n))

    def classify(self):
        return {
            "positive": self.positive,
            "normalized": self.normalized,
            "total": self.total,
            "monotone": self.monotone,
        }

    def completed(self):
        """Canonical total completion: append the reverse-lex forms x_n, ..., x_1."""
        if self.total:
            return self
        extra = tuple(unit(self.n, j) for j in range(self.n - 1, -1, -1))
        return MonomialOrder(self.forms + extra)

    def to_text(self):
        parts = []
        for f in self.forms:
            terms = [(f"{c}*x{j + 1}" if c != 1 else f"x{j + 1}") for j, c in enumerate(f) if c]
            parts.append("+".join(terms) if terms else "0")
        return "; ".join(parts)


def standard_order(n):
    """(x_1+...+x_n, x_2+...+x_n, ..., x_n): total, normalized and monotone."""
    return MonomialOrder(tuple(tuple(1 if j >= i else 0 for j in range(n)) for i in range(n)))


def revlex_order(n):
    return MonomialOrder(tuple(unit(n, j) for j in range(n - 1, -1, -1)))


_TERM = re.compile(r"\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?x(\d+)\s*")


def parse_order(text, n):
    """Parse ``"x1+x2; x2"`` (semicolon-separated forms, terms ``c*xi``)."""
    forms = []
    col = 1
    for chunk in text.split(";"):
        form = [Fraction(0)] * n
        if not chunk.strip():
            raise ParseError("empty linear form", column=col)
        for term in chunk.split("+"):
            m = _TERM.fullmatch(term)
            if not m:
                raise ParseError(f"bad term {term.strip()!r} in order", column=col + max(chunk.find(term), 0))
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            j = int(m.group(2)) - 1
            if not 0 <= j < n:
                raise ParseError(f"variable x{j + 1} outside 1..{n}", column=col)
            form[j] += c
        forms.append(tuple(form))
        col += len(chunk) + 1
    return MonomialOrder(tuple(forms))
