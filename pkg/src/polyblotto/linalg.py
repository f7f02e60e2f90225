"""Small dense linear algebra over exact rationals (or floats with a tolerance)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def row_echelon(rows: Sequence[Sequence], tol: float = 0.0) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination with partial pivoting.

    Works on Fractions (``tol=0``, exact) or floats.  Returns the reduced
    rows and the list of pivot columns.
    """
    A = [list(r) for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        best = max(range(r, m), key=lambda i: abs(A[i][c]))
        if abs(A[best][c]) <= tol:
            if tol:
                for i in range(r, m):
                    A[i][c] = 0 * A[i][c]
            continue
        A[r], A[best] = A[best], A[r]
        piv = A[r][c]
        A[r] = [v / piv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [vi - f * vr for vi, vr in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def null_vector(rows: Sequence[Sequence], tol: float = 0.0) -> list | None:
    """A nonzero vector v with ``rows @ v = 0``, or None if the kernel is trivial."""
    if not rows:
        raise ValueError("empty matrix")
    n = len(rows[0])
    R, pivots = row_echelon(rows, tol)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    exact = tol == 0
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    f = free[0]
    v = [zero] * n
    v[f] = one
    for row, c in zip(R, pivots):
        v[c] = -row[f]
    return v
