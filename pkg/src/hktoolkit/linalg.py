"""Exact linear algebra over a FieldSpec: sparse echelon forms, ranks, determinants, solves.

Sparse vectors are dicts column -> nonzero value.  Column order is supplied as
a key function so that pivots can be chosen as the *smallest* column in a
prescribed order (initial exponents of local orders are minima).
"""

from .errors import SingularMatrix
from .fields import QQ


def _axpy(F, row, c, other):
    """row - c*other, in place."""
    p = F.p
    for k, v in other.items():
        w = row.get(k, 0) - c * v
        if p:
            w %= p
        if w == 0:
            row.pop(k, None)
        else:
            row[k] = w
    return row


class Echelon:
    """Incremental echelon basis with pivot = minimal column under ``key``.

    Stored rows are normalized so that the pivot coefficient is 1.  Rows are
    not kept fully reduced; ``reduce`` brings a vector to a form with no
    pivot columns at all (used for full reduction and membership).
    """

    def __init__(self, field=QQ, key=None):
        self.F = field
        self.key = key or (lambda c: c)
        self.rows = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    def pivot(self, row):
        return min(row, key=self.key)

    def insert(self, row):
        """Reduce ``row`` by existing pivots (leading part only) and add it if nonzero.

        Returns the new pivot column or None when the row was dependent.
        """
        F = self.F
        row = dict(row)
        key = self.key
        while row:
            c = min(row, key=key)
            base = self.rows.get(c)
            if base is None:
                inv = F.inv(row[c])
                if inv != 1:
                    for k in row:
                        row[k] = F.norm(row[k] * inv)
                self.rows[c] = row
                return c
            _axpy(F, row, row[c], base)
        return None

    def reduce(self, row):
        """Eliminate every pivot column from ``row`` (result supported on non-pivot columns)."""
        F = self.F
        row = dict(row)
        key = self.key
        # process pivot columns in increasing key order; eliminating one only
        # introduces larger columns, so a single sweep with re-checks suffices
        while True:
            cols = [c for c in row if c in self.rows]
            if not cols:
                return row
            c = min(cols, key=key)
            _axpy(F, row, row[c], self.rows[c])

    def contains(self, row):
        return not self.reduce(row)

    def pivots(self):
        return sorted(self.rows, key=self.key)


def rank(rows, field=QQ):
    e = Echelon(field)
    for r in rows:
        if r:
            e.insert(r)
    return len(e)


def det(M, field=QQ):
    """Determinant of a dense square matrix (list of lists) by Gaussian elimination."""
    F = field
    n = len(M)
    if n == 0:
        return F.one
    A = [[F(x) for x in row] for row in M]
    sign = 1
    result = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return F.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        pv = A[col][col]
        result = F.norm(result * pv)
        inv = F.inv(pv)
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = F.norm(A[r][col] * inv)
                rowc = A[col]
                A[r] = [F.norm(x - f * y) for x, y in zip(A[r], rowc)]
    return F.norm(result * sign)


def sparse_det(rows, cols, field=QQ):
    """Determinant of a square matrix given as sparse rows over the column list ``cols``."""
    index = {c: i for i, c in enumerate(cols)}
    if len(rows) != len(cols):
        raise ValueError("matrix is not square")
    dense = []
    for r in rows:
        line = [field.zero] * len(cols)
        for c, v in r.items():
            line[index[c]] = v
        dense.append(line)
    return det(dense, field)


def solve_sparse(columns, rhs, field=QQ):
    """Solve sum_j x_j * columns[j] = rhs for a square nonsingular system.

    ``columns`` maps unknown-name -> sparse vector (dict row -> value).
    Returns dict unknown-name -> value (zeros omitted).  Raises SingularMatrix.
    """
    F = field
    # transpose into equations: for each row index, {unknown: coeff}
    eqs = {}
    for name, vec in columns.items():
        for r, v in vec.items():
            eqs.setdefault(r, {})[name] = v
    for r in rhs:
        eqs.setdefault(r, {})
    if len(eqs) != len(columns):
        raise SingularMatrix(f"system is not square ({len(eqs)} equations, {len(columns)} unknowns)")
    # augmented rows, the rhs stored under a sentinel key
    RHS = ("__rhs__",)
    order = {name: i for i, name in enumerate(columns)}
    key = lambda c: (1, 0) if c == RHS else (0, order[c])
    ech = Echelon(F, key)
    for r in sorted(eqs, key=repr):
        row = dict(eqs[r])
        if r in rhs and rhs[r] != 0:
            row[RHS] = rhs[r]
        piv = ech.insert(row)
        if piv == RHS:
            raise SingularMatrix("inconsistent system")
    if len(ech) != len(columns):
        raise SingularMatrix(f"rank {len(ech)} < {len(columns)}")
    # back substitution: reduce every row fully
    sol = {}
    for piv in sorted(ech.rows, key=key, reverse=True):
        row = ech.rows[piv]
        val = row.get(RHS, F.zero)
        for c, v in row.items():
            if c != piv and c != RHS:
                val = F.norm(val - v * sol.get(c, F.zero))
        sol[piv] = val
    return {k: v for k, v in sol.items() if v != 0}


def nullspace_rank_dense(M, field=QQ):
    """Rank of a dense matrix."""
    rows = [{j: v for j, v in enumerate(r) if v != 0} for r in M]
    return rank(rows, field)
