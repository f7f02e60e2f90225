"""Approximate equilibria of the continuous game and their certification.

Two solve paths are provided:

* ``lp-grid``: discretize both players' allocations, solve the matrix game
  by linear programming, optionally add each player's exact continuous best
  response to the grid and re-solve (a double-oracle refinement), then
  shrink both supports with :func:`reduce_support`.
* ``symmetric-grid``: brute force over mixtures of a few symmetrized pure
  strategies with weights in multiples of 1/L.

Either way the result is certified by best-response gaps computed against
the continuous game.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .game import GameSpec
from .lp import LPError, solve_matrix_game
from .roots import SCAN_POINTS, maximize
from .strategy import DiscreteStrategy, _check_players, exact_payoff, reduce_support, symmetrize

DEFAULT_L = 16
DEFAULT_TOL = 1e-9
DEFAULT_REFINE = 30
REFINE_TOL = 1e-10
MIN_SPACING = 1e-9  # relative to the interval half-width
CERT_TOL = 1e-9
ENUMERATION_CAP = 10**7

METHODS = ("lp-grid", "symmetric-grid")


class BudgetExceeded(RuntimeError):
    """The symmetric-grid enumeration would exceed its candidate cap."""


@dataclass(frozen=True)
class DiscreteGameMatrix:
    row_locations: tuple[Fraction, ...]
    col_locations: tuple[Fraction, ...]
    payoffs: tuple[tuple[Fraction, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.payoffs])


def uniform_grid(nu: Fraction, L: int) -> list[Fraction]:
    """L + 1 equally spaced points covering [-nu, nu]."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if nu == 0:
        return [Fraction(0)]
    step = 2 * nu / L
    return [-nu + k * step for k in range(L + 1)]


def _payoff_table(game: GameSpec, rows, cols, cache: dict | None = None) -> tuple[tuple[Fraction, ...], ...]:
    P = game.P
    cache = {} if cache is None else cache
    out = []
    for x in rows:
        row = []
        for y in cols:
            key = (x, y)
            if key not in cache:
                cache[key] = P(x - y)
            row.append(cache[key])
        out.append(tuple(row))
    return tuple(out)


def build_grid_game(game: GameSpec, L: int) -> DiscreteGameMatrix:
    rows = uniform_grid(game.nu1, L)
    cols = uniform_grid(game.nu2, L)
    return DiscreteGameMatrix(tuple(rows), tuple(cols), _payoff_table(game, rows, cols))


@dataclass(frozen=True)
class BestResponses:
    value: Fraction
    x: Fraction
    best1: Fraction
    y: Fraction
    best2: Fraction

    @property
    def gap1(self) -> float:
        return float(self.best1 - self.value)

    @property
    def gap2(self) -> float:
        return float(self.value - self.best2)


def best_responses(game: GameSpec, s1: DiscreteStrategy, s2: DiscreteStrategy, scan: int = SCAN_POINTS) -> BestResponses:
    """Each player's best pure reply against the other's mixed strategy."""
    _check_players(game, s1, s2)
    P = game.P
    # Player 1's payoff as a function of x against s2, and Player 2's against s1
    against2 = sum((P.compose_affine(1, -y).scale(q) for y, q in s2.atoms), start=P.scale(0))
    against1 = sum((P.compose_affine(-1, x).scale(p) for x, p in s1.atoms), start=P.scale(0))
    x, best1 = maximize(against2, -game.nu1, game.nu1, scan)
    y, worst = maximize(-against1, -game.nu2, game.nu2, scan)
    return BestResponses(exact_payoff(game, s1, s2), x, best1, y, -worst)


def best_response_gap(game: GameSpec, s1: DiscreteStrategy, s2: DiscreteStrategy, scan: int = SCAN_POINTS) -> tuple[float, float, float]:
    """(gap1, gap2, value): how much each player gains by the best pure deviation."""
    br = best_responses(game, s1, s2, scan)
    return br.gap1, br.gap2, float(br.value)


@dataclass(frozen=True)
class EquilibriumReport:
    strategy1: DiscreteStrategy
    strategy2: DiscreteStrategy
    value_exact: Fraction
    gap1: float
    gap2: float
    method: str
    L: int | None = None
    K: int | None = None
    rounds: int = 0
    degenerate: bool = False
    support_before: tuple[int, int] | None = field(default=None, compare=False)

    @property
    def value(self) -> float:
        return float(self.value_exact)

    @property
    def support_sizes(self) -> tuple[int, int]:
        return self.strategy1.support_size, self.strategy2.support_size

    def certified(self, threshold: float) -> bool:
        return self.gap1 <= threshold and self.gap2 <= threshold


def _certify(game, s1, s2, method, **extra) -> EquilibriumReport:
    br = best_responses(game, s1, s2)
    return EquilibriumReport(s1, s2, br.value, br.gap1, br.gap2, method, **extra)


def _degenerate(game: GameSpec, method: str, **extra) -> EquilibriumReport | None:
    """Constant kernels and n = 0 games need no search."""
    if game.kernel.is_constant:
        s1 = DiscreteStrategy.pure(0, game.nu1, 1)
        s2 = DiscreteStrategy.pure(0, game.nu2, 2)
    elif game.nu2 == 0:
        x, _ = maximize(game.P, -game.nu1, game.nu1)
        s1 = DiscreteStrategy.pure(x, game.nu1, 1)
        s2 = DiscreteStrategy.pure(0, game.nu2, 2)
    else:
        return None
    return _certify(game, s1, s2, method, degenerate=True, **extra)


def _reduce(s: DiscreteStrategy, game: GameSpec, player: int) -> DiscreteStrategy:
    if game.nu(player) == 0:
        return s
    return reduce_support(s, game.basis(player, game.M or 0))


def solve_lp_pipeline(
    game: GameSpec,
    L: int = DEFAULT_L,
    tol: float = DEFAULT_TOL,
    refine: int = DEFAULT_REFINE,
    refine_tol: float = REFINE_TOL,
    symmetric: bool = True,
) -> EquilibriumReport:
    """Grid LP equilibrium, refined by best-response points, reduced and certified.

    The grids are mirror symmetric and ``P`` is even, so the restricted game
    is invariant under ``(x, y) -> (-x, -y)`` and the symmetrized LP solution
    is still optimal; with ``symmetric`` (the default) that solution is used,
    which picks the central point of a non-unique optimal face.

    ``refine`` bounds the number of rounds in which each player's continuous
    best response (and its mirror image) is added to the grid; refinement
    stops early once ``gap1 + gap2 <= refine_tol``.  ``refine=0`` gives the
    plain grid LP.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    report = _degenerate(game, "lp-grid", L=L)
    if report is not None:
        return report

    rows = uniform_grid(game.nu1, L)
    cols = uniform_grid(game.nu2, L)
    spacing1 = float(game.nu1) * MIN_SPACING
    spacing2 = float(game.nu2) * MIN_SPACING
    cache: dict = {}
    rounds = 0
    best = None
    while True:
        A = np.array([[float(v) for v in r] for r in _payoff_table(game, rows, cols, cache)])
        sol = solve_matrix_game(A, tol)
        lo, hi = sol.certificate(A)
        if hi - lo > CERT_TOL * (1.0 + abs(sol.value)):
            # near-degenerate tableau; fall back to the last good iterate
            if best is None:
                raise LPError(f"grid LP certificate gap {hi - lo:.3g}")
            break
        s1 = DiscreteStrategy.from_weights(rows, sol.p, game.nu1, 1)
        s2 = DiscreteStrategy.from_weights(cols, sol.q, game.nu2, 2)
        if symmetric:
            s1, s2 = symmetrize(s1), symmetrize(s2)
        br = best_responses(game, s1, s2)
        if best is None or br.gap1 + br.gap2 < best[2]:
            best = (s1, s2, br.gap1 + br.gap2, rounds)
        if rounds >= refine or br.gap1 + br.gap2 <= refine_tol:
            break
        new_rows = _fresh({br.x, -br.x}, rows, spacing1) if br.gap1 > refine_tol / 2 else set()
        new_cols = _fresh({br.y, -br.y}, cols, spacing2) if br.gap2 > refine_tol / 2 else set()
        if not new_rows and not new_cols:
            break
        rows = sorted(set(rows) | new_rows)
        cols = sorted(set(cols) | new_cols)
        rounds += 1
    s1, s2, _, rounds = best

    before = (s1.support_size, s2.support_size)
    r1, r2 = _reduce(s1, game, 1), _reduce(s2, game, 2)
    return _certify(game, r1, r2, "lp-grid", L=L, rounds=rounds, support_before=before)


def _fresh(points, grid, spacing: float) -> set:
    """Points not within ``spacing`` of any grid point (near-duplicate rows break the simplex)."""
    arr = np.array([float(g) for g in grid])
    return {t for t in points if np.abs(arr - float(t)).min() > spacing}


def default_components(game: GameSpec) -> int:
    """Number of symmetrized pure strategies allowed per mixture: floor(M/2) + 2."""
    return (game.M or 0) // 2 + 2


def _compositions(L: int, k: int) -> np.ndarray:
    """All ways to write 1 as k positive multiples of 1/L, one per row."""
    rows = []
    for cuts in itertools.combinations(range(1, L), k - 1):
        edges = (0,) + cuts + (L,)
        rows.append([edges[i + 1] - edges[i] for i in range(k)])
    return np.array(rows, dtype=float).reshape(-1, k) / L


def _count_candidates(size: int, L: int, K: int) -> int:
    return sum(math.comb(size, k) * math.comb(L - 1, k - 1) for k in range(1, K + 1))


def _best_mixture(S: np.ndarray, L: int, K: int) -> tuple[tuple[int, ...], np.ndarray, float]:
    """Max over mixtures of the rows of S of the minimum over columns."""
    best = None
    for k in range(1, min(K, S.shape[0]) + 1):
        W = _compositions(L, k)
        if W.size == 0:
            continue
        for subset in itertools.combinations(range(S.shape[0]), k):
            worst = (W @ S[list(subset)]).min(axis=1)
            i = int(worst.argmax())
            if best is None or worst[i] > best[2]:
                best = (subset, W[i], float(worst[i]))
    return best


def solve_symmetric_grid(
    game: GameSpec,
    L: int = DEFAULT_L,
    K: int | None = None,
    cap: int = ENUMERATION_CAP,
) -> EquilibriumReport:
    """Max-min over mixtures of at most K symmetrized grid pure strategies, then the mirrored min-max."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if K is None:
        K = default_components(game)
    if K < 1:
        raise ValueError("K must be at least 1")
    report = _degenerate(game, "symmetric-grid", L=L, K=K)
    if report is not None:
        return report

    T1 = [k * game.nu1 / L for k in range(L + 1)]
    T2 = [k * game.nu2 / L for k in range(L + 1)]
    K = min(K, len(T1))
    total = _count_candidates(len(T1), L, K) + _count_candidates(len(T2), L, K)
    if total > cap:
        raise BudgetExceeded(f"{total} candidate mixtures exceed the cap of {cap}")

    P = game.P
    # symmetrized pure strategies: (P(t - u) + P(t + u)) / 2 since P is even
    S = np.array([[float((P(t - u) + P(t + u)) / 2) for u in T2] for t in T1])
    sub1, w1, _ = _best_mixture(S, L, K)
    sub2, w2, _ = _best_mixture(-S.T, L, K)

    s1 = _symmetric_strategy([T1[i] for i in sub1], w1, game.nu1, 1, L)
    s2 = _symmetric_strategy([T2[i] for i in sub2], w2, game.nu2, 2, L)
    return _certify(game, s1, s2, "symmetric-grid", L=L, K=K)


def _symmetric_strategy(points, weights, nu, player, L) -> DiscreteStrategy:
    atoms = []
    for t, w in zip(points, weights):
        w = Fraction(round(w * L), L)
        atoms += [(t, w / 2), (-t, w / 2)]
    return DiscreteStrategy.create(atoms, nu, player)


def solve(game: GameSpec, method: str = "lp-grid", **kwargs) -> EquilibriumReport:
    if method == "lp-grid":
        return solve_lp_pipeline(game, **kwargs)
    if method == "symmetric-grid":
        return solve_symmetric_grid(game, **kwargs)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def mc_check(game: GameSpec, s1: DiscreteStrategy, s2: DiscreteStrategy, samples: int, seed: int) -> tuple[float, float]:
    """Monte Carlo estimate of the expected payoff and its standard error.

    Atom indices are drawn i.i.d. from both strategies; the sample mean and
    variance are then formed exactly from the counts of distinct pairs, so a
    degenerate pair gives exactly the true payoff with zero error.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    _check_players(game, s1, s2)
    rng = np.random.default_rng(seed)
    p = np.array([float(w) for w in s1.weights])
    q = np.array([float(w) for w in s2.weights])
    i = rng.choice(len(p), size=samples, p=p / p.sum())
    j = rng.choice(len(q), size=samples, p=q / q.sum())
    keys, counts = np.unique(i * len(q) + j, return_counts=True)
    P = game.P
    total = Fraction(0)
    total_sq = Fraction(0)
    for key, cnt in zip(keys.tolist(), counts.tolist()):
        x = s1.locations[key // len(q)]
        y = s2.locations[key % len(q)]
        v = P(x - y)
        total += cnt * v
        total_sq += cnt * v * v
    mean = total / samples
    if samples == 1:
        return float(mean), 0.0
    var = (total_sq - samples * mean * mean) / (samples - 1)
    return float(mean), math.sqrt(max(float(var), 0.0) / samples)
