"""Discrete mixed strategies, their reduced coordinates, and support reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .game import GameSpec
from .linalg import null_vector
from .poly import OrthoBasis
from .rational import as_fraction

Atom = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class DiscreteStrategy:
    """A finite mixture of pure strategies in shifted coordinates.

    ``atoms`` is sorted by location, has distinct locations and strictly
    positive weights summing to exactly 1.  Build instances with
    :meth:`create` (or :meth:`for_game`), which canonicalizes the input.
    """

    atoms: tuple[Atom, ...]
    player: int
    nu: Fraction

    def __post_init__(self):
        if self.player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {self.player}")
        if not self.atoms:
            raise ValueError("a strategy needs at least one atom")
        locs = [t for t, _ in self.atoms]
        if locs != sorted(set(locs)):
            raise ValueError("atom locations must be distinct and sorted; use create()")
        if any(w <= 0 for _, w in self.atoms):
            raise ValueError("atom weights must be positive; use create()")
        if sum(w for _, w in self.atoms) != 1:
            raise ValueError("atom weights must sum to 1")
        for t in locs:
            if not -self.nu <= t <= self.nu:
                raise ValueError(f"location {t} outside [-{self.nu}, {self.nu}]")

    @classmethod
    def create(cls, atoms: Iterable[tuple], nu, player: int = 1) -> DiscreteStrategy:
        """Merge equal locations, drop zero weights, sort."""
        merged: dict[Fraction, Fraction] = {}
        for t, w in atoms:
            t, w = as_fraction(t), as_fraction(w)
            if w < 0:
                raise ValueError(f"negative weight {w} at location {t}")
            merged[t] = merged.get(t, Fraction(0)) + w
        pairs = tuple(sorted((t, w) for t, w in merged.items() if w != 0))
        return cls(pairs, player, as_fraction(nu))

    @classmethod
    def for_game(cls, game: GameSpec, player: int, atoms: Iterable[tuple]) -> DiscreteStrategy:
        return cls.create(atoms, game.nu(player), player)

    @classmethod
    def pure(cls, t, nu, player: int = 1) -> DiscreteStrategy:
        return cls.create([(t, 1)], nu, player)

    @classmethod
    def from_weights(
        cls,
        locations: Sequence,
        weights: Sequence[float],
        nu,
        player: int = 1,
        cutoff: float = 1e-12,
    ) -> DiscreteStrategy:
        """Build from float weights: drop weights below ``cutoff``, rationalize, renormalize exactly."""
        from .rational import from_float

        kept = [(t, from_float(float(w))) for t, w in zip(locations, weights) if w >= cutoff]
        kept = [(t, w) for t, w in kept if w > 0]
        if not kept:
            raise ValueError("all weights fell below the cutoff")
        total = sum(w for _, w in kept)
        return cls.create([(t, w / total) for t, w in kept], nu, player)

    @property
    def locations(self) -> list[Fraction]:
        return [t for t, _ in self.atoms]

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.atoms]

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    def is_symmetric(self) -> bool:
        return self == symmetrize(self)


def _check_basis(t, basis: OrthoBasis) -> Fraction:
    t = as_fraction(t)
    if not -basis.nu <= t <= basis.nu:
        raise ValueError(f"location {t} outside [-{basis.nu}, {basis.nu}]")
    return t


def embed_pure(t, basis: OrthoBasis) -> np.ndarray:
    """Coordinates of the pure strategy at ``t``: the orthonormal basis evaluated there."""
    return basis.evaluate(_check_basis(t, basis))


def embed_pure_exact(t, basis: OrthoBasis) -> tuple[Fraction, ...]:
    """Exact coordinates in the monic (unnormalized) basis."""
    return basis.evaluate_monic(_check_basis(t, basis))


def embed_strategy(s: DiscreteStrategy, basis: OrthoBasis) -> np.ndarray:
    """Orthonormal coordinates of ``s``, computed exactly and rounded once."""
    exact = embed_strategy_exact(s, basis)
    return np.array([float(v) for v in exact]) * basis.normalizers


def embed_strategy_exact(s: DiscreteStrategy, basis: OrthoBasis) -> tuple[Fraction, ...]:
    if s.nu != basis.nu:
        raise ValueError(f"strategy interval nu={s.nu} does not match basis nu={basis.nu}")
    total = [Fraction(0)] * (basis.max_degree + 1)
    for t, w in s.atoms:
        for i, v in enumerate(embed_pure_exact(t, basis)):
            total[i] += w * v
    return tuple(total)


def symmetrize(s: DiscreteStrategy) -> DiscreteStrategy:
    """Even part of ``s``: each atom is split evenly with its mirror image."""
    half = Fraction(1, 2)
    atoms = [(t, w * half) for t, w in s.atoms] + [(-t, w * half) for t, w in s.atoms]
    return DiscreteStrategy.create(atoms, s.nu, s.player)


def _is_exact(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def caratheodory_reduce(points: Sequence[Sequence], weights: Sequence) -> tuple[list[int], list]:
    """Rewrite a convex combination of points in R^d using at most d + 1 of them.

    Repeatedly takes the first d + 2 points still in use, finds an affine
    dependency ``sum d_s p_s = 0`` with ``sum d_s = 0``, and moves the
    weights along it by the largest step keeping them nonnegative, which
    zeroes at least one of them.  Exact when every coordinate and weight is
    rational; otherwise runs in floating point.

    Returns the surviving indices (ascending) and their new weights.
    """
    if not points:
        raise ValueError("need at least one point")
    if len(points) != len(weights):
        raise ValueError("points and weights differ in length")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise ValueError("points have mismatched dimensions")
    exact = _is_exact(weights) and all(_is_exact(p) for p in points)
    if exact:
        c = [Fraction(w) for w in weights]
        tol = 0.0
        if sum(c) != 1:
            raise ValueError("weights must sum to 1")
    else:
        c = [float(w) for w in weights]
        scale = max((abs(float(v)) for p in points for v in p), default=1.0) or 1.0
        tol = 1e-12 * scale
        if abs(sum(c) - 1) > 1e-9:
            raise ValueError("weights must sum to 1")
    if any(w < 0 for w in c):
        raise ValueError("weights must be nonnegative")

    active = [i for i, w in enumerate(c) if w > 0]
    while len(active) > d + 1:
        S = active[: d + 2]
        rows = [[points[i][k] for i in S] for k in range(d)]
        rows.append([1] * len(S))
        kind = Fraction if exact else float
        rows = [[kind(v) for v in row] for row in rows]
        dep = null_vector(rows, tol)
        if dep is None:  # float rank misjudged; the kernel is never trivial in exact arithmetic
            raise ArithmeticError("no affine dependency found among d+2 points")
        if not any(v < 0 for v in dep):
            dep = [-v for v in dep]
        t_best, b = None, None
        for pos, i in enumerate(S):
            if dep[pos] < 0:
                ratio = -c[i] / dep[pos]
                if b is None or ratio < b:
                    t_best, b = pos, ratio
        for pos, i in enumerate(S):
            c[i] = c[i] + b * dep[pos]
        c[S[t_best]] = 0 * c[S[t_best]]
        if not exact:
            for i in S:
                if c[i] < 0:
                    c[i] = 0.0
        active = [i for i in active if c[i] > 0]
    if not exact:
        total = sum(c[i] for i in active)
        for i in active:
            c[i] /= total
    return active, [c[i] for i in active]


def reduce_support(
    s: DiscreteStrategy,
    basis: OrthoBasis,
    *,
    degree: int | None = None,
    symmetric: bool = False,
    drop_constant: bool = False,
) -> DiscreteStrategy:
    """Payoff-equivalent strategy built from at most ``degree + 2`` of the atoms of ``s``.

    Atoms are embedded in exact monic coordinates up to ``degree`` (default:
    the basis degree) and reduced with :func:`caratheodory_reduce`, so the
    result has exactly the same coordinates and therefore the same payoff
    against every opponent.

    ``drop_constant`` leaves out the 0-th coordinate, which is 1 for every
    pure strategy, saving one more atom.  ``symmetric`` treats each mirror
    pair {t, -t} of a symmetric strategy as one component and reduces over
    the even coordinates only, leaving at most ``degree // 2 + 2``
    components.
    """
    if degree is None:
        degree = basis.max_degree
    if degree > basis.max_degree:
        raise ValueError(f"basis only covers degree {basis.max_degree}, asked for {degree}")
    if symmetric:
        if not s.is_symmetric():
            raise ValueError("symmetric reduction needs a symmetric strategy")
        comps = [(t, w if t == 0 else 2 * w) for t, w in s.atoms if t >= 0]
        idx = range(2 if drop_constant else 0, degree + 1, 2)
    else:
        comps = list(s.atoms)
        idx = range(1 if drop_constant else 0, degree + 1)
    idx = list(idx)
    limit = len(idx) + 1
    if len(comps) <= limit:
        return s
    pts = []
    for t, _ in comps:
        vals = embed_pure_exact(t, basis)
        pts.append([vals[i] for i in idx])
    keep, new_w = caratheodory_reduce(pts, [w for _, w in comps])
    if symmetric:
        atoms = []
        for i, w in zip(keep, new_w):
            t = comps[i][0]
            atoms += [(t, w)] if t == 0 else [(t, w / 2), (-t, w / 2)]
    else:
        atoms = [(comps[i][0], w) for i, w in zip(keep, new_w)]
    return DiscreteStrategy.create(atoms, s.nu, s.player)


def exact_payoff(game: GameSpec, s1: DiscreteStrategy, s2: DiscreteStrategy) -> Fraction:
    """Expected payoff to Player 1: sum over atom pairs of p_i q_j P(x_i - y_j)."""
    _check_players(game, s1, s2)
    P = game.P
    total = Fraction(0)
    for x, p in s1.atoms:
        for y, q in s2.atoms:
            total += p * q * P(x - y)
    return total


def _check_players(game: GameSpec, s1: DiscreteStrategy, s2: DiscreteStrategy) -> None:
    if s1.player != 1 or s2.player != 2:
        raise ValueError("expected a Player 1 strategy and a Player 2 strategy, in that order")
    if s1.nu != game.nu1 or s2.nu != game.nu2:
        raise ValueError("strategy intervals do not match the game")
