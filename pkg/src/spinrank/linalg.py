"""Dense exact linear algebra over Q(i).

Matrices are lists of row lists of :class:`~spinrank.scalars.GaussianRational`
(plain ints and Fractions are accepted on input).
"""

from .scalars import ONE, ZERO, as_scalar

__all__ = ["to_matrix", "identity", "matmul", "transpose", "exact_rank", "determinant", "row_echelon"]


def to_matrix(rows):
    return [[as_scalar(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    """Product skipping zero entries of ``a``; sparse-ish lattice matrices benefit."""
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * m
        for j, x in enumerate(row):
            if not x:
                continue
            brow = b[j]
            for c in range(m):
                y = brow[c]
                if y:
                    acc[c] = acc[c] + x * y
        out.append(acc)
    return out


def row_echelon(a):
    """Gaussian elimination; returns ``(reduced rows, pivot positions, swap count)``.

    Pivot rule: scan columns left to right, and within a column take the first
    row (top to bottom) at or below the current pivot row holding a nonzero entry.
    """
    rows = [list(map(as_scalar, r)) for r in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            swaps += 1
        pivot_row = rows[r]
        inv = pivot_row[c].reciprocal()
        for i in range(r + 1, nrows):
            x = rows[i][c]
            if not x:
                continue
            factor = x * inv
            row = rows[i]
            for j in range(c, ncols):
                y = pivot_row[j]
                if y:
                    row[j] = row[j] - factor * y
        pivots.append((r, c))
        r += 1
    return rows, pivots, swaps


def exact_rank(a) -> int:
    """Rank over Q(i) by exact elimination."""
    if not a or not a[0]:
        return 0
    return len(row_echelon(a)[1])


def determinant(a):
    n = len(a)
    if n == 0:
        return ONE
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    rows, pivots, swaps = row_echelon(a)
    if len(pivots) < n:
        return ZERO
    det = -ONE if swaps % 2 else ONE
    for i in range(n):
        det = det * rows[i][i]
    return det
