"""Tightness of the L1 envelope across a (n, q, Delta) grid.

Runs the same sweep as ``weightpoly sweep`` and summarises, per Delta,
the largest ratio diam_l1 / envelope seen over construction and sampled
games.

    python scripts/sweep_tightness.py --n 8 10 --jobs 4 --out sweep.csv
"""

from __future__ import annotations

import argparse
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from weightpoly.sweep import SweepConfig, run_sweep, write_csv


@dataclass(frozen=True)
class TightnessConfig:
    n_values: tuple[int, ...] = (8, 10)
    q_grid: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(3, 4))
    delta_grid: tuple[Fraction, ...] = (Fraction(1, 8), Fraction(1, 5), Fraction(1, 4))
    samples: int = 5
    seed: int = 0
    jobs: int = 1
    out: Optional[Path] = None


def run(cfg: TightnessConfig) -> None:
    rows = run_sweep(SweepConfig(cfg.n_values, cfg.q_grid, cfg.delta_grid, cfg.samples, cfg.seed, cfg.jobs))
    if cfg.out is not None:
        cfg.out.write_text(write_csv(rows), newline="")
    best: dict[Fraction, Fraction] = defaultdict(Fraction)
    for row in rows:
        best[row.delta] = max(best[row.delta], row.tightness_ratio)
    print(f"{len(rows)} rows")
    for delta in sorted(best):
        print(f"delta {str(delta):>5}: max diam/envelope = {best[delta]} ({float(best[delta]):.4f})")


def main() -> None:
    d = TightnessConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=list(d.n_values))
    ap.add_argument("--q", type=Fraction, nargs="+", default=list(d.q_grid))
    ap.add_argument("--delta", type=Fraction, nargs="+", default=list(d.delta_grid))
    ap.add_argument("--samples", type=int, default=d.samples)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--jobs", type=int, default=d.jobs)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    run(TightnessConfig(tuple(a.n), tuple(a.q), tuple(a.delta), a.samples, a.seed, a.jobs, a.out))


if __name__ == "__main__":
    main()
