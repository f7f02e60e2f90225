"""Zero-sum matrix games solved by a dense tableau simplex.

The row player maximizes.  All payoffs are shifted to be >= 1 so the game
value is positive, then the column player's program

    maximize sum(u)  subject to  A u <= 1,  u >= 0

is solved from the slack basis (feasible, so no phase one).  With
``s = sum(u)`` the value is ``1/s``, the column strategy is ``u/s`` and the
row strategy comes from the slack reduced costs (the dual solution).
Bland's rule prevents cycling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPError(RuntimeError):
    """The simplex did not terminate within its iteration budget."""


@dataclass(frozen=True)
class MatrixGameSolution:
    p: np.ndarray
    q: np.ndarray
    value: float
    iterations: int

    def certificate(self, A) -> tuple[float, float]:
        """(min_j (p^T A)_j, max_i (A q)_i); these bracket the value."""
        A = np.asarray(A, dtype=float)
        return float((self.p @ A).min()), float((A @ self.q).max())


def solve_matrix_game(A, tol: float = 1e-9, max_iter: int | None = None) -> MatrixGameSolution:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.size == 0:
        raise ValueError("payoff matrix must be a non-empty 2-D array")
    if tol <= 0:
        raise ValueError("tol must be positive")
    m, n = A.shape
    shift = max(0.0, -float(A.min())) + 1.0
    B = A + shift
    if max_iter is None:
        max_iter = 10 * (m + n) ** 2

    # columns 0..n-1 structural, n..n+m-1 slack
    T = np.zeros((m, n + m))
    T[:, :n] = B
    T[:, n:] = np.eye(m)
    rhs = np.ones(m)
    cost = np.concatenate([np.ones(n), np.zeros(m)])  # reduced costs, maximize
    basis = list(range(n, n + m))
    eps = 1e-12 * max(1.0, float(np.abs(B).max()))

    it = 0
    while True:
        entering = next((j for j in range(n + m) if cost[j] > eps), None)
        if entering is None:
            break
        if it >= max_iter:
            raise LPError(f"simplex exceeded {max_iter} iterations")
        it += 1
        col = T[:, entering]
        best_row, best_ratio = None, None
        for i in range(m):
            if col[i] > eps:
                ratio = rhs[i] / col[i]
                if (
                    best_row is None
                    or ratio < best_ratio - eps
                    or (abs(ratio - best_ratio) <= eps and basis[i] < basis[best_row])
                ):
                    best_row, best_ratio = i, ratio
        if best_row is None:
            # cannot happen: every column of B is strictly positive
            raise LPError("unbounded program")
        piv = T[best_row, entering]
        T[best_row] /= piv
        rhs[best_row] /= piv
        for i in range(m):
            if i != best_row and T[i, entering] != 0.0:
                f = T[i, entering]
                T[i] -= f * T[best_row]
                rhs[i] -= f * rhs[best_row]
        f = cost[entering]
        cost -= f * T[best_row]
        basis[best_row] = entering

    u = np.zeros(n)
    for i, b in enumerate(basis):
        if b < n:
            u[b] = max(rhs[i], 0.0)
    dual = np.maximum(-cost[n:], 0.0)
    s = u.sum()
    q = u / s
    p = dual / dual.sum()
    value = 1.0 / s - shift
    return MatrixGameSolution(p, q, value, it)
