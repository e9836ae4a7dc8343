"""Exact linear algebra over the rationals.

Small dense routines on lists of Fractions: row reduction, rank,
nullspace, linear solving with explicit none/unique/multiple outcomes,
determinant and inverse.  No floating point is involved anywhere, so
ranks and kernels computed here are exact.
"""

from __future__ import annotations

from fractions import Fraction

NO_SOLUTION = "none"
UNIQUE = "unique"
MULTIPLE = "multiple"


def _copy(rows):
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows):
    """Reduced row echelon form. Returns (matrix, pivot_columns)."""
    m = _copy(rows)
    if not m:
        return m, []
    nrows = len(m)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right nullspace, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(1 if i == j else 0) for i in range(ncols)]
                for j in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve(a_rows, b):
    """Solve A x = b exactly.

    Returns (NO_SOLUTION, None), (UNIQUE, x) or (MULTIPLE, x_particular).
    A may be rectangular (overdetermined systems included).
    """
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    aug = [list(map(Fraction, row)) + [Fraction(bv)]
           for row, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return NO_SOLUTION, None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    if len(pivots) < ncols:
        return MULTIPLE, x
    return UNIQUE, x


def det(rows) -> Fraction:
    m = _copy(rows)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(rows):
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) +
           [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]
