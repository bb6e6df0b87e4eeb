"""Brute-force reference computations used by the tests (no shared code with
the library beyond plain exponent tuples)."""

from itertools import product


def in_ideal(a, vertices):
    return any(all(x >= v for x, v in zip(a, vert)) for vert in vertices)


def staircase_count(vertices, n, s):
    """#{a not in Delta : |a| <= s} by enumerating the box."""
    return sum(1 for a in product(range(s + 1), repeat=n) if sum(a) <= s and not in_ideal(a, vertices))


def poly_mul(p, q):
    out = {}
    for a, c in p.items():
        for b, d in q.items():
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v != 0}
