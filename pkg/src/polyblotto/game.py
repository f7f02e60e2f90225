"""Two-battlefield Blotto games in shifted coordinates and their reduced payoff matrix.

Player 1 has ``n + a`` resources and Player 2 has ``n``.  Allocations to
battlefield 1 are re-centred on the even split, so Player 1 picks
``x`` in ``[-nu1, nu1]`` with ``nu1 = (n + a)/2`` and Player 2 picks ``y`` in
``[-nu2, nu2]`` with ``nu2 = n/2``.  Player 1's payoff is then ``P(x - y)``
with ``P(z) = r(z + a/2) + r(-z + a/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .poly import (
    Interval,
    OrthoBasis,
    Polynomial,
    as_polynomial,
    binomial_expand_difference,
    gram_schmidt_basis,
    moments,
)
from .rational import as_fraction


@dataclass(frozen=True)
class ShiftedKernel:
    P: Polynomial
    M: int | None

    @property
    def is_constant(self) -> bool:
        return self.M is None or self.M == 0


def shift_payoff(game: GameSpec) -> ShiftedKernel:
    half_a = game.a / 2
    r = game.r
    P = r.compose_affine(1, half_a) + r.compose_affine(-1, half_a)
    return ShiftedKernel(P, P.degree)


@dataclass(frozen=True)
class GameSpec:
    n: Fraction
    a: Fraction
    r: Polynomial

    def __post_init__(self):
        n, a = as_fraction(self.n), as_fraction(self.a)
        if n < 0:
            raise ValueError(f"Player 2 resources n must be nonnegative, got {n}")
        if a < 0:
            raise ValueError(f"Player 1 advantage a must be nonnegative, got {a}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "r", as_polynomial(self.r))

    @classmethod
    def from_coeffs(cls, n, a, r_coeffs: Sequence) -> GameSpec:
        return cls(n, a, Polynomial(tuple(r_coeffs)))

    @property
    def nu1(self) -> Fraction:
        return (self.n + self.a) / 2

    @property
    def nu2(self) -> Fraction:
        return self.n / 2

    def nu(self, player: int) -> Fraction:
        if player == 1:
            return self.nu1
        if player == 2:
            return self.nu2
        raise ValueError(f"player must be 1 or 2, got {player}")

    @property
    def N(self) -> int | None:
        return self.r.degree

    @cached_property
    def kernel(self) -> ShiftedKernel:
        return shift_payoff(self)

    @property
    def P(self) -> Polynomial:
        return self.kernel.P

    @property
    def M(self) -> int | None:
        return self.kernel.M

    def basis(self, player: int, degree: int | None = None) -> OrthoBasis:
        if degree is None:
            degree = self.M or 0
        return gram_schmidt_basis(degree, Interval(self.nu(player)))


def payoff(game: GameSpec, x, y):
    """Player 1's payoff ``P(x - y)`` for shifted allocations ``x`` and ``y``."""
    if not -game.nu1 <= x <= game.nu1:
        raise ValueError(f"x={x} outside [-{game.nu1}, {game.nu1}]")
    if not -game.nu2 <= y <= game.nu2:
        raise ValueError(f"y={y} outside [-{game.nu2}, {game.nu2}]")
    if isinstance(x, float) or isinstance(y, float):
        return game.P(float(x) - float(y))
    return game.P(as_fraction(x) - as_fraction(y))


@dataclass(frozen=True)
class ReducedMatrix:
    """Matrix of the payoff operator in the monic bases of both players.

    ``entries[i][j] = monic1[i] . (E monic2[j])`` exactly.  The float view
    in the orthonormal bases is derived on demand.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    basis1: OrthoBasis
    basis2: OrthoBasis
    M: int | None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @cached_property
    def normalized_view(self) -> np.ndarray:
        raw = np.array([[float(v) for v in row] for row in self.entries])
        return raw * np.outer(self.basis1.normalizers, self.basis2.normalizers)


def reduced_matrix(game: GameSpec, basis_degree: int | None = None) -> ReducedMatrix:
    M = game.M
    top = M if M is not None else 0
    if basis_degree is None:
        basis_degree = top
    if basis_degree < top:
        raise ValueError(f"basis_degree {basis_degree} below kernel degree {M}: lossy truncation")
    if game.nu2 <= 0:
        raise ValueError("reduced matrix needs n > 0 (Player 2 basis undefined)")
    b1 = game.basis(1, basis_degree)
    b2 = game.basis(2, basis_degree)
    expansion = binomial_expand_difference(game.P)
    m1 = moments(b1, top)
    m2 = moments(b2, top)
    size = basis_degree + 1
    entries = []
    for i in range(size):
        row = []
        for j in range(size):
            # monic_i is orthogonal to every x^k with k < i
            total = Fraction(0)
            for (p, q), c in expansion.items():
                if p >= i and q >= j:
                    total += c * m1[i][p] * m2[j][q]
            row.append(total)
        entries.append(tuple(row))
    return ReducedMatrix(tuple(entries), b1, b2, M)


def expected_payoff_reduced(fvec, matrix: ReducedMatrix, gvec) -> float:
    """``fvec^T A gvec`` with ``A`` the orthonormal-basis view of ``matrix``."""
    A = matrix.normalized_view
    f = np.asarray(fvec, dtype=float)
    g = np.asarray(gvec, dtype=float)
    if f.shape != (A.shape[0],) or g.shape != (A.shape[1],):
        raise ValueError(f"dimension mismatch: {f.shape} x {A.shape} x {g.shape}")
    return float(f @ A @ g)


def kernel_range(game: GameSpec) -> tuple[float, float]:
    """Min and max of ``P(x - y)`` over the strategy rectangle (z ranges over [-nu1-nu2, nu1+nu2])."""
    from .roots import maximize, minimize

    span = game.nu1 + game.nu2
    lo = minimize(game.P, -span, span)[1]
    hi = maximize(game.P, -span, span)[1]
    return float(lo), float(hi)

