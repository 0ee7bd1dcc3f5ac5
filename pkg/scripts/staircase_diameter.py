"""Exact L1 and L-inf diameters of W(v) for staircase games [q; (n, n-1, ..., 1)].

Prints the envelope next to the computed diameter for each n, so the
gap between the upper bound and the true spread is visible.

    python scripts/staircase_diameter.py --n 8 10 12 --quota 3/5
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from weightpoly import WeightedRepresentation, realize
from weightpoly.bounds import thm43_envelope
from weightpoly.polytope import diameter_l1, diameter_linf


@dataclass(frozen=True)
class StaircaseConfig:
    n_values: tuple[int, ...] = (6, 8, 10, 12)
    quota: Fraction = Fraction(3, 5)


def staircase(n: int, quota: Fraction) -> WeightedRepresentation:
    total = n * (n + 1) // 2
    return WeightedRepresentation(quota, tuple(Fraction(k, total) for k in range(n, 0, -1)))


def run(cfg: StaircaseConfig) -> None:
    print(f"{'n':>3} {'delta':>8} {'basic':>8} {'refined':>8} {'diam_l1':>10} {'diam_linf':>10} {'secs':>6}")
    for n in cfg.n_values:
        rep = staircase(n, cfg.quota)
        basic, refined = thm43_envelope(rep.quota, rep.max_weight)
        start = time.perf_counter()
        v = realize(rep)
        l1, linf = diameter_l1(v).value, diameter_linf(v).value
        secs = time.perf_counter() - start
        ref = "-" if refined is None else str(refined)
        print(f"{n:>3} {str(rep.max_weight):>8} {str(basic):>8} {ref:>8} {str(l1):>10} {str(linf):>10} {secs:6.1f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=list(StaircaseConfig.n_values))
    ap.add_argument("--quota", type=Fraction, default=StaircaseConfig.quota)
    args = ap.parse_args()
    run(StaircaseConfig(tuple(args.n), args.quota))


if __name__ == "__main__":
    main()
