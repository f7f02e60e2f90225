"""Command-line front end.

Machine-readable JSON goes to stdout, everything meant for people goes to
stderr.  Exit codes: 0 success, 2 bad input, 3 certification failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import config as cfg
from .game import GameSpec, reduced_matrix
from .lp import LPError
from .poly import Interval, gram_schmidt_basis
from .rational import as_fraction, format_fraction
from .solver import BudgetExceeded, EquilibriumReport, best_responses, mc_check, solve
from .strategy import DiscreteStrategy, exact_payoff, reduce_support

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCERTIFIED = 3

CORPUS_DIR = Path(__file__).parent / "corpus"
GOLDEN_SUFFIX = ".golden.json"
OPPONENTS = 10


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(doc) -> None:
    sys.stdout.write(cfg.dump_json(doc))


# --- solve ------------------------------------------------------------------

def run_config(conf: cfg.GameConfig) -> tuple[dict[str, Any], EquilibriumReport]:
    """Solve a configured game and build its result document."""
    game = conf.game()
    st = conf.solver
    if st.method == "lp-grid":
        report = solve(game, "lp-grid", L=st.L, tol=st.tol, refine=st.refine)
    else:
        report = solve(game, "symmetric-grid", L=st.L, K=st.K)
    doc: dict[str, Any] = {
        "schema": cfg.RESULT_SCHEMA,
        "config": conf.to_json(),
        "kernel": {
            "P": [format_fraction(c) for c in game.P.coeffs],
            "M": game.M,
        },
        "reduced_matrix": _matrix_json(game),
        "report": cfg.report_json(report, st.gap_threshold),
        "strategy1": cfg.strategy_json(game, report.strategy1),
        "strategy2": cfg.strategy_json(game, report.strategy2),
    }
    if st.samples > 0:
        est, se = mc_check(game, report.strategy1, report.strategy2, st.samples, st.seed)
        doc["mc"] = {"samples": st.samples, "seed": st.seed, "estimate": est, "stderr": se}
    return doc, report


def _matrix_json(game: GameSpec):
    if game.nu2 == 0 or game.M is None:
        return None
    return reduced_matrix(game).normalized_view.tolist()


def _load(args) -> cfg.GameConfig:
    conf = cfg.load_config(args.config)
    return conf.with_overrides(
        method=getattr(args, "method", None),
        L=getattr(args, "L", None),
        K=getattr(args, "K", None),
        tol=getattr(args, "tol", None),
        gap_threshold=getattr(args, "gap_threshold", None),
        seed=getattr(args, "seed", None),
        samples=getattr(args, "samples", None),
    )


def cmd_solve(args) -> int:
    conf = _load(args)
    doc, report = run_config(conf)
    _emit(doc)
    ok = report.certified(conf.solver.gap_threshold)
    _err(
        f"{report.method}: value {report.value:.12g}  gap1 {report.gap1:.3g}  gap2 {report.gap2:.3g}  "
        f"supports {report.support_sizes}  {'PASS' if ok else 'FAIL'}"
    )
    return EXIT_OK if ok else EXIT_UNCERTIFIED


# --- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    conf = _load(args)
    game = conf.game()
    strategies = cfg.parse_strategies(cfg.read_json(args.strategies), game, args.coords)
    br = best_responses(game, strategies[1], strategies[2])
    threshold = conf.solver.gap_threshold
    ok = br.gap1 <= threshold and br.gap2 <= threshold
    _emit({
        "value": float(br.value),
        "value_exact": format_fraction(br.value),
        "gap1": br.gap1,
        "gap2": br.gap2,
        "best_reply1": format_fraction(br.x),
        "best_reply2": format_fraction(br.y),
        "gap_threshold": threshold,
        "verdict": "PASS" if ok else "FAIL",
    })
    _err(f"value {float(br.value):.12g}  gap1 {br.gap1:.3g}  gap2 {br.gap2:.3g}")
    _err("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_UNCERTIFIED


# --- reduce -----------------------------------------------------------------

def random_opponents(game: GameSpec, player: int, count: int, seed: int) -> list[DiscreteStrategy]:
    """Seeded opponents for ``player``: 1 to 5 atoms on a 1/64 lattice of the other interval."""
    other = 3 - player
    nu = game.nu(other)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 6))
        locs = rng.integers(-64, 65, size=k).tolist()
        ws = rng.integers(1, 10, size=k).tolist()
        total = sum(ws)
        atoms = [(Fraction(t, 64) * nu, Fraction(w, total)) for t, w in zip(locs, ws)]
        out.append(DiscreteStrategy.create(atoms, nu, other))
    return out


def _payoff(game, s, opp):
    return exact_payoff(game, s, opp) if s.player == 1 else exact_payoff(game, opp, s)


def reduce_for_game(game: GameSpec, s: DiscreteStrategy, seed: int = 0) -> tuple[DiscreteStrategy, float]:
    """Support-reduced ``s`` and the largest payoff change over seeded random opponents."""
    if game.nu(s.player) == 0:
        return s, 0.0
    reduced = reduce_support(s, game.basis(s.player, game.M or 0))
    dev = 0.0
    for opp in random_opponents(game, s.player, OPPONENTS, seed):
        dev = max(dev, abs(float(_payoff(game, s, opp) - _payoff(game, reduced, opp))))
    return reduced, dev


def cmd_reduce(args) -> int:
    conf = _load(args)
    game = conf.game()
    strategies = cfg.parse_strategies(cfg.read_json(args.strategies), game, args.coords, require_both=False)
    doc: dict[str, Any] = {"M": game.M, "seed": conf.solver.seed}
    for player, s in sorted(strategies.items()):
        reduced, dev = reduce_for_game(game, s, conf.solver.seed)
        doc[f"strategy{player}"] = {
            **cfg.strategy_json(game, reduced),
            "support_before": s.support_size,
            "support_after": reduced.support_size,
            "max_deviation": dev,
        }
        _err(f"player {player}: {s.support_size} -> {reduced.support_size} atoms, max deviation {dev:.3g}")
    _emit(doc)
    return EXIT_OK


# --- basis ------------------------------------------------------------------

def cmd_basis(args) -> int:
    nu = as_fraction(args.nu)
    if nu <= 0:
        raise cfg.ConfigError(f"nu must be positive, got {nu}")
    if args.max_degree < 0:
        raise cfg.ConfigError("max-degree must be nonnegative")
    basis = gram_schmidt_basis(args.max_degree, Interval(nu))
    normalized = basis.normalized_coeffs()
    rows = []
    for i, (p, sq) in enumerate(zip(basis.monic, basis.sq_norms)):
        rows.append({
            "degree": i,
            "monic": [format_fraction(c) for c in p.coeffs],
            "sq_norm": format_fraction(sq),
            "normalized": normalized[i, : i + 1].tolist(),
        })
        terms = " ".join(f"{c:+.10g}x^{k}" for k, c in enumerate(normalized[i, : i + 1]) if c != 0)
        _err(f"f{i}: {terms}   |monic|^2 = {format_fraction(sq)}")
    _emit({"nu": format_fraction(nu), "basis": rows})
    return EXIT_OK


# --- corpus -----------------------------------------------------------------

def corpus_configs(directory: Path = CORPUS_DIR) -> list[Path]:
    return sorted(p for p in directory.glob("*.json") if not p.name.endswith(GOLDEN_SUFFIX))


def golden_path(config_path: Path) -> Path:
    return config_path.with_name(config_path.stem + GOLDEN_SUFFIX)


def compare_to_golden(doc: dict, golden: dict, rtol: float = 1e-8) -> list[str]:
    """Differences that matter between a fresh result and its golden copy."""
    problems = []

    def close(a, b):
        return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))

    if doc["kernel"] != golden["kernel"]:
        problems.append("kernel differs")
    rep, gold = doc["report"], golden["report"]
    if not close(rep["value"], gold["value"]):
        problems.append(f"value {rep['value']!r} != {gold['value']!r}")
    if rep["support_sizes"] != gold["support_sizes"]:
        problems.append(f"support sizes {rep['support_sizes']} != {gold['support_sizes']}")
    if rep["certified"] != gold["certified"]:
        problems.append(f"certified {rep['certified']} != {gold['certified']}")
    threshold = gold["gap_threshold"]
    for key in ("gap1", "gap2"):
        if rep[key] > max(gold[key], threshold) * (1 + rtol):
            problems.append(f"{key} {rep[key]:.3g} grew past {max(gold[key], threshold):.3g}")
    a, b = doc["reduced_matrix"], golden["reduced_matrix"]
    if (a is None) != (b is None):
        problems.append("reduced matrix presence differs")
    elif a is not None:
        if np.shape(a) != np.shape(b) or not np.allclose(a, b, rtol=rtol, atol=rtol):
            problems.append("reduced matrix differs")
    return problems


def cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else CORPUS_DIR
    paths = corpus_configs(directory)
    if not paths:
        raise cfg.ConfigError(f"no configs in {directory}")
    failed = 0
    summary = []
    for path in paths:
        doc, report = run_config(cfg.load_config(path))
        gp = golden_path(path)
        if args.write_golden:
            gp.write_text(cfg.dump_json(doc))
            status = "written"
        elif not gp.exists():
            status, failed = "missing golden", failed + 1
        else:
            problems = compare_to_golden(doc, cfg.read_json(gp))
            if not report.certified(doc["report"]["gap_threshold"]):
                problems.append("not certified")
            status = "ok" if not problems else "; ".join(problems)
            failed += bool(problems)
        summary.append({"name": path.stem, "value": report.value, "gap1": report.gap1, "gap2": report.gap2,
                        "support_sizes": list(report.support_sizes), "status": status})
        _err(f"{path.stem:24s} value {report.value:+.10f}  supports {report.support_sizes}  {status}")
    _emit({"corpus": summary, "failed": failed})
    return EXIT_OK if not failed else EXIT_UNCERTIFIED


# --- entry ------------------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        return float(as_fraction(text))
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyblotto", description="Equilibria of two-battlefield polynomial Blotto games")
    sub = parser.add_subparsers(dest="command", required=True)

    def game_flags(p, solver_flags: bool):
        p.add_argument("--config", required=True, help="JSON game config")
        p.add_argument("--gap-threshold", type=_positive_float, dest="gap_threshold")
        p.add_argument("--seed", type=int)
        if solver_flags:
            p.add_argument("--method", choices=("lp-grid", "symmetric-grid"))
            p.add_argument("--L", type=int, dest="L")
            p.add_argument("--K", type=int, dest="K")
            p.add_argument("--tol", type=_positive_float)
            p.add_argument("--samples", type=int)

    p = sub.add_parser("basis", help="orthonormal polynomial basis on [-nu, nu]")
    p.add_argument("--nu", required=True)
    p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("solve", help="compute and certify an equilibrium")
    game_flags(p, True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="best-response gaps of a given strategy pair")
    game_flags(p, False)
    p.add_argument("--strategies", required=True, help="strategies file or result document")
    p.add_argument("--coords", choices=("shifted", "original"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="shrink strategy supports without changing payoffs")
    game_flags(p, False)
    p.add_argument("--strategies", required=True)
    p.add_argument("--coords", choices=("shifted", "original"))
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("corpus", help="run the bundled regression corpus against its golden outputs")
    p.add_argument("--dir", help="corpus directory (default: the bundled one)")
    p.add_argument("--write-golden", action="store_true", dest="write_golden")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, BudgetExceeded) as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT
    except LPError as exc:
        _err(f"solver failure: {exc}")
        return EXIT_UNCERTIFIED


if __name__ == "__main__":
    sys.exit(main())
