"""Acceptance checks, one ``test_criterion_<k>_*`` group per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
PASS/FAIL line for each criterion.
"""

from contextlib import redirect_stdout
from fractions import Fraction as F
import io
import json
import random
import sys
import time

import numpy as np
import pytest

from polyblotto.cli import main as cli_main, random_opponents
from polyblotto.game import GameSpec, expected_payoff_reduced, reduced_matrix
from polyblotto.lp import solve_matrix_game
from polyblotto.poly import Interval, gram_schmidt_basis, inner_product
from polyblotto.solver import best_response_gap, mc_check, solve_lp_pipeline
from polyblotto.strategy import (
    DiscreteStrategy,
    caratheodory_reduce,
    embed_strategy,
    embed_strategy_exact,
    exact_payoff,
    reduce_support,
    symmetrize,
)

from test_poly import closed_form_basis

CUBIC = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])


def random_rational(rng: random.Random, lo: int, hi: int, den: int = 6) -> F:
    return F(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_game(rng: random.Random, max_degree: int = 6, degree: int | None = None) -> GameSpec:
    N = degree if degree is not None else rng.randint(1, max_degree)
    coeffs = [random_rational(rng, -2, 2) for _ in range(N)]
    coeffs.append(random_rational(rng, 1, 2) * rng.choice([-1, 1]))
    n = F(rng.randint(1, 16), 4)
    a = F(rng.randint(0, 12), 4)
    return GameSpec.from_coeffs(n, a, coeffs)


def random_strategy(rng: random.Random, game: GameSpec, player: int, max_atoms: int = 6) -> DiscreteStrategy:
    nu = game.nu(player)
    k = rng.randint(1, max_atoms)
    raw = [rng.randint(1, 12) for _ in range(k)]
    atoms = [(F(rng.randint(-60, 60), 60) * nu, F(w, sum(raw))) for w in raw]
    return DiscreteStrategy.for_game(game, player, atoms)


# --- 1 ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def worked_solution(tmp_path_factory):
    path = tmp_path_factory.mktemp("c1") / "cubic.json"
    path.write_text(json.dumps({"n": "2", "a": "1", "r_coeffs": ["0", "0", "0", "-1"], "solver": {"L": 16}}))
    start = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["solve", "--config", str(path)])
    elapsed = time.perf_counter() - start
    return code, json.loads(buf.getvalue()), elapsed


def test_criterion_1_cli_exit_and_runtime(worked_solution):
    code, _, elapsed = worked_solution
    assert code == 0
    assert elapsed <= 5.0


def test_criterion_1_equilibrium_shape(worked_solution):
    _, doc, _ = worked_solution
    s1 = [(float(F(a["location"])), float(F(a["weight"]))) for a in doc["strategy1"]["shifted"]]
    s2 = [(float(F(a["location"])), float(F(a["weight"]))) for a in doc["strategy2"]["shifted"]]
    assert all(abs(x) <= 1e-6 for x, _ in s1)
    assert sum(w for _, w in s1) == pytest.approx(1, abs=1e-12)
    for target in (-1.0, 1.0):
        mass = sum(w for y, w in s2 if abs(y - target) <= 1e-6)
        assert abs(mass - 0.5) <= 1e-6
    rep = doc["report"]
    assert abs(rep["value"] + 3.25) <= 1e-6
    assert rep["gap1"] <= 1e-6 and rep["gap2"] <= 1e-6


# --- 2 ----------------------------------------------------------------------

@pytest.mark.parametrize("nu", [F(1, 2), F(1), F(3)])
def test_criterion_2_closed_forms(nu):
    basis = gram_schmidt_basis(4, Interval(nu))
    got = basis.normalized_coeffs()
    for i, expected in enumerate(closed_form_basis(float(nu))):
        row = np.zeros(5)
        row[: len(expected)] = expected
        assert np.abs(got[i] - row).max() <= 1e-10 * max(1.0, np.abs(row).max())
    for i in range(5):
        for j in range(i):
            assert inner_product(basis.monic[i], basis.monic[j], nu) == 0


# --- 3 ----------------------------------------------------------------------

def test_criterion_3_rank_and_checkerboard():
    rng = random.Random(3)
    failures = 0
    for _ in range(100):
        g = random_game(rng)
        M = g.M or 0
        R = reduced_matrix(g, basis_degree=M + 3)
        for i in range(M + 4):
            for j in range(M + 4):
                if (i > M or j > M or (i + j) % 2) and R.entries[i][j] != 0:
                    failures += 1
    assert failures == 0


# --- 4 ----------------------------------------------------------------------

def test_criterion_4_reduced_payoff_matches_atom_sum():
    rng = random.Random(4)
    worst = 0.0
    for _ in range(100):
        g = random_game(rng)
        R = reduced_matrix(g)
        s1, s2 = random_strategy(rng, g, 1), random_strategy(rng, g, 2)
        exact = exact_payoff(g, s1, s2)
        reduced = expected_payoff_reduced(embed_strategy(s1, R.basis1), R, embed_strategy(s2, R.basis2))
        # scale: the atom sum without cancellation
        scale = max(abs(float(exact)), float(sum(abs(p * q * g.P(x - y)) for x, p in s1.atoms for y, q in s2.atoms)), 1e-300)
        worst = max(worst, abs(reduced - float(exact)) / scale)
    assert worst <= 1e-9


# --- 5 ----------------------------------------------------------------------

def test_criterion_5_caratheodory_random():
    rng = random.Random(5)
    for _ in range(200):
        d = rng.randint(1, 6)
        k = rng.randint(1, 50)
        pts = [[random_rational(rng, -5, 5) for _ in range(d)] for _ in range(k)]
        raw = [rng.randint(1, 20) for _ in range(k)]
        w = [F(r, sum(raw)) for r in raw]
        idx, nw = caratheodory_reduce(pts, w)
        assert len(idx) <= d + 1
        assert sum(nw) == 1 and all(v >= 0 for v in nw)
        for c in range(d):
            assert sum(v * pts[i][c] for i, v in zip(idx, nw)) == sum(v * p[c] for v, p in zip(w, pts))


def test_criterion_5_reduce_support_payoff():
    rng = random.Random(55)
    for trial in range(20):
        g = random_game(rng)
        M = g.M or 0
        for player in (1, 2):
            nu = g.nu(player)
            s = DiscreteStrategy.for_game(g, player, [(nu * F(2 * k - 29, 29), F(1, 30)) for k in range(30)])
            r = reduce_support(s, g.basis(player, M))
            assert r.support_size <= M + 2
            for opp in random_opponents(g, player, 10, trial):
                before = exact_payoff(g, s, opp) if player == 1 else exact_payoff(g, opp, s)
                after = exact_payoff(g, r, opp) if player == 1 else exact_payoff(g, opp, r)
                assert abs(float(before - after)) <= 1e-9


# --- 6 ----------------------------------------------------------------------

def test_criterion_6_exact_identities():
    rng = random.Random(6)
    for _ in range(50):
        g = random_game(rng)
        s1, s2 = random_strategy(rng, g, 1), random_strategy(rng, g, 2)
        e1, e2 = symmetrize(s1), symmetrize(s2)
        assert exact_payoff(g, e1, e2) == exact_payoff(g, s1, e2) == exact_payoff(g, e1, s2)
        M = g.M or 0
        for s, player in ((e1, 1), (e2, 2)):
            b = g.basis(player, max(M, 1))
            assert all(v == 0 for v in embed_strategy_exact(s, b)[1::2])
            assert np.abs(embed_strategy(s, b)[1::2]).max(initial=0.0) <= 1e-12


def test_criterion_6_symmetrized_worked_solution():
    rep = solve_lp_pipeline(CUBIC, L=16)
    gap1, gap2, value = best_response_gap(CUBIC, symmetrize(rep.strategy1), symmetrize(rep.strategy2))
    assert gap1 <= 1e-6 and gap2 <= 1e-6 and abs(value + 3.25) <= 1e-6


# --- 7 ----------------------------------------------------------------------

@pytest.mark.parametrize("A,value,p,q", [
    ([[1, -1], [-1, 1]], 0.0, [0.5, 0.5], [0.5, 0.5]),
    ([[0, -1, 1], [1, 0, -1], [-1, 1, 0]], 0.0, [1 / 3] * 3, [1 / 3] * 3),
    ([[2, 0], [1, 3]], 1.5, [0.5, 0.5], [0.75, 0.25]),
])
def test_criterion_7_analytic_games(A, value, p, q):
    A = np.array(A, dtype=float)
    sol = solve_matrix_game(A)
    assert abs(sol.value - value) <= 1e-9
    assert np.abs(sol.p - p).max() <= 1e-9 and np.abs(sol.q - q).max() <= 1e-9
    lo, hi = sol.certificate(A)
    assert hi - lo <= 2e-9


def test_criterion_7_random_certificates():
    rng = np.random.default_rng(7)
    for _ in range(50):
        m, n = rng.integers(1, 9, size=2)
        A = rng.uniform(-1, 1, size=(m, n))
        sol = solve_matrix_game(A, tol=1e-9)
        lo, hi = sol.certificate(A)
        assert lo >= sol.value - 1e-9 and hi <= sol.value + 1e-9
        assert hi - lo <= 2e-9


# --- 8 ----------------------------------------------------------------------

def corpus_games() -> list[GameSpec]:
    from polyblotto.cli import corpus_configs
    from polyblotto.config import load_config

    games = [load_config(p).game() for p in corpus_configs()]
    rng = random.Random(8)
    for N in (2, 3, 4, 5, 6):
        games += [random_game(rng, degree=N) for _ in range(5)]
    return [g for g in games if g.N is not None and 2 <= g.N <= 6]


@pytest.mark.parametrize("game", corpus_games(), ids=lambda g: f"N{g.N}-n{g.n}-a{g.a}")
def test_criterion_8_support_bound(game):
    rep = solve_lp_pipeline(game)
    assert rep.gap1 <= 1e-5 and rep.gap2 <= 1e-5
    assert max(rep.support_sizes) <= game.N + 2


# --- 9 ----------------------------------------------------------------------

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_criterion_9_monte_carlo(seed):
    rep = solve_lp_pipeline(CUBIC, L=16)
    est, se = mc_check(CUBIC, rep.strategy1, rep.strategy2, 10**5, seed)
    assert abs(est + 3.25) <= 4 * se


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
