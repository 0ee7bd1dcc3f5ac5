"""JSON game files.

A weighted game is ``{"n": 4, "quota": "51/1", "weights": ["35/1", ...]}``;
any simple game can be given as ``{"n": 3, "minimal_winning": [[1, 2], [3]]}``
with 1-based players. Rationals are strings ``"p/q"`` (plain integers are
accepted too).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .games import SimpleGame, WeightedRepresentation, realize
from .rational import as_fraction, fmt, fmt_vector

__all__ = ["GameFileError", "GameSpec", "parse_game", "load_game", "dump_representation", "dump_game"]


class GameFileError(ValueError):
    """The file is not valid JSON or does not follow the game format."""


class GameSpec:
    """A parsed game file: the game and, for weighted input, its representation."""

    def __init__(self, game: SimpleGame, rep: Optional[WeightedRepresentation]):
        self.game = game
        self.rep = rep


def _rational(value, what: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise GameFileError(f"{what} must be a rational string such as \"3/5\"")
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise GameFileError(f"{what}: {exc}") from exc


def parse_game(data: object) -> GameSpec:
    """Build a game from decoded JSON.

    Format problems raise ``GameFileError``; well-formed input that breaks a
    game invariant (non-positive quota, non-monotone family, ...) raises the
    corresponding ``GameError`` from ``realize`` or ``SimpleGame``.
    """
    if not isinstance(data, dict):
        raise GameFileError("a game file holds a JSON object")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise GameFileError('"n" must be an integer')
    if "weights" in data or "quota" in data:
        if "minimal_winning" in data:
            raise GameFileError('give either "quota"/"weights" or "minimal_winning", not both')
        if "weights" not in data or "quota" not in data:
            raise GameFileError('a weighted game needs both "quota" and "weights"')
        weights = data["weights"]
        if not isinstance(weights, list):
            raise GameFileError('"weights" must be a list')
        if len(weights) != n:
            raise GameFileError(f'"n" is {n} but {len(weights)} weights are given')
        quota = _rational(data["quota"], "quota")
        ws = [_rational(x, f"weight {i + 1}") for i, x in enumerate(weights)]
        rep = WeightedRepresentation.of(quota, ws)
        return GameSpec(realize(rep), rep)
    if "minimal_winning" in data:
        family = data["minimal_winning"]
        if not isinstance(family, list) or not all(isinstance(c, list) for c in family):
            raise GameFileError('"minimal_winning" must be a list of player lists')
        for c in family:
            if not all(isinstance(p, int) and not isinstance(p, bool) for p in c):
                raise GameFileError("players are 1-based integers")
        return GameSpec(SimpleGame.from_minimal_winning(n, family), None)
    raise GameFileError('expected "quota"/"weights" or "minimal_winning"')


def load_game(source: Union[str, Path]) -> GameSpec:
    """Read and parse a game file; ``"-"`` reads standard input."""
    import sys

    try:
        text = sys.stdin.read() if str(source) == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise GameFileError(f"cannot read {source}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc}") from exc
    return parse_game(data)


def dump_representation(rep: WeightedRepresentation) -> dict:
    return {"n": rep.n, "quota": fmt(rep.quota), "weights": fmt_vector(rep.weights)}


def dump_game(v: SimpleGame) -> dict:
    mw = [[i + 1 for i in range(v.n) if m >> i & 1] for m in v.minimal_winning_masks]
    return {"n": v.n, "minimal_winning": mw}
