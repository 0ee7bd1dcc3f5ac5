"""Diameter versus envelope over a grid of ``(n, q, Delta)`` cells.

Each cell contributes one row for the extremal game built from ``(q, Delta)``
and ``samples`` rows for random representations with exactly that quota and
maximum weight. Rows carry exact ``p/q`` strings plus display-only decimal
columns, and are sorted by ``(n, q, Delta, source)`` before writing, so the
CSV is a pure function of the configuration.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .bounds import thm43_envelope
from .constructions import lemma36_witness
from .games import SimpleGame, realize
from .polytope import L1_MAX_PLAYERS, PolytopeOracle, build_polytope, diameter_l1, diameter_linf
from .rational import decimal_str, fmt
from .sampling import random_with_max_weight

__all__ = ["SweepConfig", "SweepRow", "GridError", "cell_rows", "run_sweep", "write_csv", "COLUMNS"]


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...]
    q_grid: tuple[Fraction, ...]
    delta_grid: tuple[Fraction, ...]
    samples: int = 0
    seed: int = 0
    jobs: int = 1

    def validate(self) -> None:
        for n in self.n_values:
            if not 2 <= n <= L1_MAX_PLAYERS:
                raise GridError(f"n={n} is outside 2..{L1_MAX_PLAYERS}")
        for q in self.q_grid:
            if not 0 < q < 1:
                raise GridError(f"quota {q} is not in (0, 1)")
        for d in self.delta_grid:
            if not 0 < d <= 1:
                raise GridError(f"maximum weight {d} is not in (0, 1]")
        if self.samples < 0:
            raise GridError("samples must be non-negative")

    def cells(self) -> list[tuple[int, Fraction, Fraction]]:
        """Cells where the extremal construction exists, i.e. ``n >= 1/Delta + 2``."""
        return [
            (n, q, d)
            for n in sorted(set(self.n_values))
            for q in sorted(set(self.q_grid))
            for d in sorted(set(self.delta_grid))
            if n >= 1 / d + 2
        ]


@dataclass(frozen=True)
class SweepRow:
    n: int
    q: Fraction
    delta: Fraction
    source: str  # "construction" or "sample<i>"
    diam_l1: Fraction
    diam_linf: Fraction
    thm43_basic: Fraction
    thm43_refined: Optional[Fraction]
    lemma36_guarantee: Fraction

    @property
    def tightness_ratio(self) -> Fraction:
        return self.diam_l1 / self.thm43_basic

    def sort_key(self) -> tuple:
        kind = 0 if self.source == "construction" else 1
        index = int(self.source[6:]) if kind else 0
        return (self.n, self.q, self.delta, kind, index)


RATIONAL_COLUMNS = (
    "q",
    "delta",
    "diam_l1",
    "diam_linf",
    "thm43_basic",
    "thm43_refined",
    "lemma36_guarantee",
    "tightness_ratio",
)
COLUMNS = ("n", "source") + tuple(c for name in RATIONAL_COLUMNS for c in (name, name + "_decimal"))


def _row(n: int, q: Fraction, d: Fraction, source: str, v: SimpleGame) -> SweepRow:
    oracle = PolytopeOracle(build_polytope(v))
    basic, refined = thm43_envelope(q, d)
    return SweepRow(
        n=n,
        q=q,
        delta=d,
        source=source,
        diam_l1=diameter_l1(v, oracle).value,
        diam_linf=diameter_linf(v, oracle).value,
        thm43_basic=basic,
        thm43_refined=refined,
        lemma36_guarantee=basic / 200,
    )


def cell_rows(cell: tuple[int, Fraction, Fraction], samples: int, seed: int) -> list[SweepRow]:
    n, q, d = cell
    rows = [_row(n, q, d, "construction", lemma36_witness(q, d, n).game)]
    # one generator per cell keeps rows independent of scheduling
    rng = np.random.default_rng([seed, n, q.numerator, q.denominator, d.numerator, d.denominator])
    for i in range(samples):
        rep = random_with_max_weight(rng, n, q, d)
        rows.append(_row(n, q, d, f"sample{i}", realize(rep)))
    return rows


def _cell_job(args) -> list[SweepRow]:
    return cell_rows(*args)


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    cfg.validate()
    jobs = [(cell, cfg.samples, cfg.seed) for cell in cfg.cells()]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_cell_job, jobs))
    else:
        chunks = [_cell_job(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=SweepRow.sort_key)
    for r in rows:
        if r.tightness_ratio > 1:
            raise AssertionError(f"diameter exceeds the envelope in cell {(r.n, r.q, r.delta)}")
    return rows


def _cells(row: SweepRow) -> list[str]:
    out = [str(row.n), row.source]
    for name in RATIONAL_COLUMNS:
        value = getattr(row, name)
        out += ["", ""] if value is None else [fmt(value), decimal_str(value, 20)]
    return out


def write_csv(rows: list[SweepRow], stream: Optional[io.TextIOBase] = None) -> str:
    """CSV text with a header row and LF line endings; also written to ``stream`` if given."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow(_cells(r))
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
