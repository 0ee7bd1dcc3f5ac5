"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 game
invariant violated, 4 empty weight polytope, 5 bad construction parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .bounds import BoundError, bound_report
from .constructions import (
    ConstructionError,
    lemma31_witness,
    lemma32_witness,
    lemma33_witness,
    lemma34_witness,
    lemma35_witness,
    lemma36_witness,
)
from .gamefile import GameFileError, load_game
from .games import GameError, classify_players, dual
from .polytope import EmptyPolytope, PolytopeError, diameter_l1, diameter_linf, is_weighted
from .power import distance_report, power_index, representation_compatible
from .rational import as_fraction, fmt
from .sweep import GridError, SweepConfig, run_sweep, write_csv
from .verify import SUITES, VerifyConfig, run_suite

EXIT_VERIFY, EXIT_PARSE, EXIT_INVARIANT, EXIT_EMPTY, EXIT_CONSTRUCTION = 1, 2, 3, 4, 5


class UsageError(Exception):
    """Bad command-line values; reported with the parse exit code."""


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _rational_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rational_list(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(as_fraction(x) for x in text.split(","))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad list {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = load_game(args.game)
    v = spec.game
    cls = classify_players(v)
    weighted = is_weighted(v)
    d = dual(v)
    players = lambda m: [i + 1 for i in range(v.n) if m >> i & 1]  # noqa: E731
    report = {
        "n": v.n,
        "minimal_winning": [players(m) for m in v.minimal_winning_masks],
        "maximal_losing": [players(m) for m in v.maximal_losing_masks],
        "kinds": list(cls.kinds),
        "equivalence_classes": [list(c) for c in cls.classes],
        "weighted": weighted.weighted,
        "separation_margin": fmt(weighted.margin),
        "dual_minimal_winning": [players(m) for m in d.minimal_winning_masks],
    }
    if args.json:
        _emit(report)
        return 0
    print(f"players: {v.n}")
    print("minimal winning: " + "; ".join(map(str, report["minimal_winning"])))
    print("maximal losing: " + "; ".join(map(str, report["maximal_losing"])))
    for c in cls.classes:
        if len(c) > 1:
            print("players " + ", ".join(map(str, c)) + " equivalent")
    for i, kind in enumerate(cls.kinds, start=1):
        if kind != "neither":
            print(f"player {i} {kind}")
    print(f"weighted: {'yes' if weighted.weighted else 'no'} (margin {fmt(weighted.margin)})")
    print("dual minimal winning: " + "; ".join(map(str, report["dual_minimal_winning"])))
    return 0


def cmd_diameter(args: argparse.Namespace) -> int:
    v = load_game(args.game).game
    cert = diameter_l1(v) if args.norm == "l1" else diameter_linf(v)
    _emit(cert.to_json())
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    spec = load_game(args.game)
    if spec.rep is None:
        raise GameFileError("bounds need a weighted game file with quota and weights")
    _emit(bound_report(spec.rep.normalize()).to_json())
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    need = {
        "31": ("k", "s", "t"),
        "32": ("s", "t"),
        "33": ("q", "n"),
        "34": ("delta", "n"),
        "35": ("delta", "n"),
        "36": ("q", "delta", "n"),
    }[args.lemma]
    missing = [name for name in need if getattr(args, name) is None]
    if missing:
        raise ConstructionError("missing parameters: " + ", ".join("--" + m for m in missing))
    a = args
    build: Callable[[], object] = {
        "31": lambda: lemma31_witness(a.k, a.s, a.t, a.variant),
        "32": lambda: lemma32_witness(a.s, a.t),
        "33": lambda: lemma33_witness(a.q, a.n),
        "34": lambda: lemma34_witness(a.delta, a.n),
        "35": lambda: lemma35_witness(a.delta, a.n),
        "36": lambda: lemma36_witness(a.q, a.delta, a.n, a.variant),
    }[args.lemma]
    try:
        witness = build()
    except PolytopeError as exc:
        raise ConstructionError(str(exc)) from exc
    _emit(witness.to_json())
    return 0 if witness.verified else EXIT_VERIFY


def cmd_power(args: argparse.Namespace) -> int:
    spec = load_game(args.game)
    phi = power_index(spec.game, args.index)
    out = {"power": phi.to_json()}
    if phi.efficient:
        out["compatibility"] = representation_compatible(spec.game, phi).to_json()
        if spec.rep is not None:
            rep = spec.rep.normalize()
            if 0 < rep.quota < 1:
                out["distance"] = distance_report(rep, phi).to_json()
    _emit(out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(VerifyConfig(args.suite, args.samples, args.seed))
    print(result.summary())
    if not result.ok:
        print(json.dumps({"suite": result.suite, "counterexample": result.violations[0]}, indent=2))
        return EXIT_VERIFY
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        n_values=_int_list(args.n),
        q_grid=_rational_list(args.q_grid),
        delta_grid=_rational_list(args.delta_grid),
        samples=args.samples,
        seed=args.seed,
        jobs=args.jobs,
    )
    try:
        rows = run_sweep(cfg)
    except GridError as exc:
        raise UsageError(str(exc)) from exc
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weightpoly", description="Exact weight polytopes of weighted voting games.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="minimal winning, maximal losing, player types, weightedness, dual")
    a.add_argument("game", help="game JSON file, or - for stdin")
    a.add_argument("--json", action="store_true", help="print a JSON report")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("diameter", help="exact diameter of the weight polytope with witnesses")
    d.add_argument("game")
    d.add_argument("--norm", choices=("l1", "linf"), default="l1")
    d.set_defaults(func=cmd_diameter)

    b = sub.add_parser("bounds", help="closed-form bounds for a weighted game")
    b.add_argument("game")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("construct", help="far-apart weight vectors for one game")
    c.add_argument("lemma", choices=("31", "32", "33", "34", "35", "36"))
    for name in ("k", "s", "t", "n"):
        c.add_argument("--" + name, type=int)
    c.add_argument("--q", type=_rational_arg)
    c.add_argument("--delta", type=_rational_arg)
    c.add_argument("--variant", choices=("l1", "linf"), default="l1")
    c.set_defaults(func=cmd_construct)

    pw = sub.add_parser("power", help="power index with compatibility and distance to the weights")
    pw.add_argument("game")
    pw.add_argument("--index", choices=("ssi", "pbi", "pbi_raw"), default="ssi")
    pw.set_defaults(func=cmd_power)

    v = sub.add_parser("verify", help="run an exact property suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="diameter against the envelope over a grid, as CSV")
    s.add_argument("--n", required=True, help="comma-separated player counts")
    s.add_argument("--q-grid", required=True, help="comma-separated quotas, e.g. 1/2,3/4")
    s.add_argument("--delta-grid", required=True, help="comma-separated maximum weights")
    s.add_argument("--samples", type=int, default=0, help="random representations per cell")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on bad usage already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GameFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except EmptyPolytope as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (GameError, BoundError, PolytopeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
