"""JSON game configs, strategy files and result documents.

Every rational field is written as a "p/q" string and read back from a
string, an int, or a float (floats are taken at their exact binary value).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any

from .game import GameSpec
from .rational import as_fraction, format_fraction
from .solver import DEFAULT_L, DEFAULT_REFINE, DEFAULT_TOL, METHODS, EquilibriumReport
from .strategy import DiscreteStrategy

RESULT_SCHEMA = "polyblotto.result/1"
DEFAULT_GAP_THRESHOLD = 1e-6


class ConfigError(ValueError):
    """Malformed or invalid input document."""


@dataclass(frozen=True)
class SolverSettings:
    method: str = "lp-grid"
    L: int = DEFAULT_L
    K: int | None = None
    tol: float = DEFAULT_TOL
    refine: int = DEFAULT_REFINE
    seed: int = 0
    samples: int = 0
    gap_threshold: float = DEFAULT_GAP_THRESHOLD

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.L < 1:
            raise ConfigError("L must be at least 1")
        if self.K is not None and self.K < 1:
            raise ConfigError("K must be at least 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.refine < 0 or self.samples < 0:
            raise ConfigError("refine and samples must be nonnegative")
        if not self.gap_threshold >= 0:
            raise ConfigError("gap_threshold must be nonnegative")

    def to_json(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "L": self.L,
            "K": self.K,
            "tol": self.tol,
            "refine": self.refine,
            "seed": self.seed,
            "samples": self.samples,
            "gap_threshold": self.gap_threshold,
        }


@dataclass(frozen=True)
class GameConfig:
    n: Fraction
    a: Fraction
    r_coeffs: tuple[Fraction, ...]
    solver: SolverSettings = field(default_factory=SolverSettings)

    def game(self) -> GameSpec:
        return GameSpec.from_coeffs(self.n, self.a, self.r_coeffs)

    def with_overrides(self, **kwargs) -> GameConfig:
        """Replace solver settings whose override is not None."""
        changes = {k: v for k, v in kwargs.items() if v is not None}
        if not changes:
            return self
        try:
            return replace(self, solver=replace(self.solver, **changes))
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_json(self) -> dict[str, Any]:
        return {
            "n": format_fraction(self.n),
            "a": format_fraction(self.a),
            "r_coeffs": [format_fraction(c) for c in self.r_coeffs],
            "solver": self.solver.to_json(),
        }


def _rational(value, name: str) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{name}: {exc}") from None


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return value


def _float(value, name: str) -> float:
    return float(_rational(value, name))


def parse_config(doc: Any) -> GameConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("n", "a", "r_coeffs"):
        if key not in doc:
            raise ConfigError(f"config is missing {key!r}")
    n = _rational(doc["n"], "n")
    a = _rational(doc["a"], "a")
    if n < 0 or a < 0:
        raise ConfigError(f"n and a must be nonnegative (got n={n}, a={a})")
    coeffs = doc["r_coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise ConfigError("r_coeffs must be a non-empty list")
    r = tuple(_rational(c, f"r_coeffs[{i}]") for i, c in enumerate(coeffs))

    block = doc.get("solver") or {}
    if not isinstance(block, dict):
        raise ConfigError("solver must be a JSON object")
    unknown = set(block) - set(SolverSettings.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown solver settings: {sorted(unknown)}")
    kw: dict[str, Any] = {}
    for key in ("L", "refine", "seed", "samples"):
        if key in block:
            kw[key] = _int(block[key], key)
    if block.get("K") is not None:
        kw["K"] = _int(block["K"], "K")
    for key in ("tol", "gap_threshold"):
        if key in block:
            kw[key] = _float(block[key], key)
    if "method" in block:
        kw["method"] = str(block["method"])
    return GameConfig(n, a, r, SolverSettings(**kw))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


def load_config(path) -> GameConfig:
    return parse_config(read_json(path))


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# --- strategies -------------------------------------------------------------

def offset(game: GameSpec, player: int) -> Fraction:
    """Shifted location = original allocation - offset."""
    return game.nu(player)


def atoms_json(s: DiscreteStrategy, shift: Fraction = Fraction(0)) -> list[dict[str, str]]:
    return [{"location": format_fraction(t + shift), "weight": format_fraction(w)} for t, w in s.atoms]


def strategy_json(game: GameSpec, s: DiscreteStrategy) -> dict[str, Any]:
    return {
        "shifted": atoms_json(s),
        "original": atoms_json(s, offset(game, s.player)),
    }


def _parse_atoms(raw, name: str) -> list[tuple[Fraction, Fraction]]:
    if not isinstance(raw, list):
        raise ConfigError(f"{name} must be a list of atoms")
    atoms = []
    for k, atom in enumerate(raw):
        if isinstance(atom, dict) and {"location", "weight"} <= set(atom):
            loc, w = atom["location"], atom["weight"]
        elif isinstance(atom, (list, tuple)) and len(atom) == 2:
            loc, w = atom
        else:
            raise ConfigError(f"{name}[{k}] must be [location, weight] or an object with location/weight")
        atoms.append((_rational(loc, f"{name}[{k}].location"), _rational(w, f"{name}[{k}].weight")))
    if not atoms:
        raise ConfigError(f"{name} has no atoms")
    return atoms


def build_strategy(game: GameSpec, player: int, raw, coords: str, name: str) -> DiscreteStrategy:
    atoms = _parse_atoms(raw, name)
    if coords == "original":
        shift = offset(game, player)
        atoms = [(t - shift, w) for t, w in atoms]
    elif coords != "shifted":
        raise ConfigError(f"coords must be 'shifted' or 'original', got {coords!r}")
    try:
        return DiscreteStrategy.for_game(game, player, atoms)
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from None


def parse_strategies(
    doc: Any, game: GameSpec, coords: str | None = None, require_both: bool = True
) -> dict[int, DiscreteStrategy]:
    """Strategies keyed by player from a strategies file or a result document.

    A strategies file looks like ``{"coords": "original", "player1": [...],
    "player2": [...]}``; ``coords`` (shifted by default) may be overridden
    by the argument.  A result document contributes its shifted atoms.
    """
    if not isinstance(doc, dict):
        raise ConfigError("strategies document must be a JSON object")
    out: dict[int, DiscreteStrategy] = {}
    if doc.get("schema") == RESULT_SCHEMA:
        for player in (1, 2):
            block = doc.get(f"strategy{player}")
            if block is not None:
                out[player] = build_strategy(game, player, block.get("shifted"), "shifted", f"strategy{player}")
    else:
        coords = coords or doc.get("coords", "shifted")
        for player in (1, 2):
            key = f"player{player}"
            if key in doc:
                out[player] = build_strategy(game, player, doc[key], coords, key)
    if require_both and len(out) < 2:
        raise ConfigError("need strategies for both players")
    if not out:
        raise ConfigError("no strategies found")
    return out


# --- results ----------------------------------------------------------------

def report_json(report: EquilibriumReport, threshold: float) -> dict[str, Any]:
    return {
        "method": report.method,
        "L": report.L,
        "K": report.K,
        "rounds": report.rounds,
        "degenerate": report.degenerate,
        "value": report.value,
        "value_exact": format_fraction(report.value_exact),
        "gap1": report.gap1,
        "gap2": report.gap2,
        "support_sizes": list(report.support_sizes),
        "support_before": list(report.support_before) if report.support_before else None,
        "gap_threshold": threshold,
        "certified": report.certified(threshold),
    }
