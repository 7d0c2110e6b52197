"""Exact dense linear solving over a scalar domain (Q or F_p).

Plain Gaussian elimination with a fixed pivot rule: first nonzero entry,
scanning rows top-down.  The fixed rule makes solution vectors reproducible
across runs, which the Galois witness search relies on.
"""

from __future__ import annotations

from .errors import DimensionMismatch


class ExactMatrix:
    """A rectangular matrix with entries from one scalar domain."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    def __repr__(self):
        return "ExactMatrix(%dx%d)" % (self.rows, self.cols)


def solve_linear(matrix: ExactMatrix, rhs):
    """One exact solution of A x = v, or None if the system is inconsistent.

    Reduces the augmented matrix to reduced row echelon form; free variables
    are set to 0, so the result is deterministic.
    """
    if len(rhs) != matrix.rows:
        raise DimensionMismatch(
            "matrix has %d rows, rhs has %d entries" % (matrix.rows, len(rhs))
        )
    m, n = matrix.rows, matrix.cols
    if m == 0:
        raise DimensionMismatch("empty system")
    aug = [list(row) + [b] for row, b in zip(matrix.entries, rhs)]

    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if aug[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c]
        aug[r] = [e / inv for e in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [e - f * g for e, g in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    # a row reduced to (0 ... 0 | nonzero) means the system is inconsistent
    for i in range(r, m):
        if aug[i][n]:
            return None

    zero = rhs[0] * 0
    x = [zero] * n
    for row_idx, c in enumerate(pivot_cols):
        x[c] = aug[row_idx][n]
    return x
