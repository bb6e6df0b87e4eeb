"""Exact coefficient fields: Q (gmpy2.mpq) and F_p (ints reduced mod p)."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import gmpy2

from .errors import FieldMismatch, ParseError


def _is_prime(p):
    return p >= 2 and gmpy2.is_prime(p)


@dataclass(frozen=True)
class FieldSpec:
    """``p == 0`` means the rationals."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if not _is_prime(self.p) or self.p >= 2**31:
                raise ValueError(f"{self.p} is not a prime below 2^31")

    @property
    def char(self):
        return self.p

    @property
    def kind(self):
        return "Rationals" if self.p == 0 else "PrimeField"

    def __str__(self):
        return "q" if self.p == 0 else f"fp:{self.p}"

    # --- element handling -------------------------------------------------
    def __call__(self, x):
        """Coerce an int / Fraction / mpq / str into the field."""
        if isinstance(x, str):
            x = _parse_rational(x)
        if self.p == 0:
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            return gmpy2.mpq(x)
        if isinstance(x, (Fraction, type(gmpy2.mpq()))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / x

    def binom(self, n, k):
        """C(n, k) as a field element (Lucas' theorem in characteristic p)."""
        if self.p == 0:
            return gmpy2.mpq(comb(n, k))
        return lucas(n, k, self.p)

    def to_str(self, x):
        if self.p:
            return str(int(x))
        x = gmpy2.mpq(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def check_same(self, other):
        if self != other:
            raise FieldMismatch(f"field {self} vs {other}")


QQ = FieldSpec(0)


def lucas(n, k, p):
    """C(n, k) mod p via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
        n //= p
        k //= p
    return out


def _parse_rational(s):
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {s!r}") from None


def parse_field(text):
    """``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text in ("q", "qq", "rationals"):
        return QQ
    if text.startswith("fp:"):
        try:
            return FieldSpec(int(text[3:]))
        except ValueError as e:
            raise ParseError(str(e)) from None
    raise ParseError(f"unknown field {text!r}; expected q or fp:<p>")
