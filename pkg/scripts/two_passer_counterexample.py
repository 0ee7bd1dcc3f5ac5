"""Where the two-passer construction breaks.

For each Delta on a grid, builds the two representations at the smallest
admissible n and reports whether both realize the intended game. The
three residual players weigh (3 Delta / 2) frac(2 / (3 Delta)) together;
when that reaches the quota Delta / 2 they form a winning coalition under
one weighting only.

    python scripts/two_passer_counterexample.py --denominator 22
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass
from fractions import Fraction

from weightpoly.constructions import lemma35_witness


@dataclass(frozen=True)
class CounterexampleConfig:
    denominator: int = 22


def run(cfg: CounterexampleConfig) -> int:
    broken = 0
    print(f"{'delta':>6} {'n':>3} {'residual sum':>13} {'quota':>6}  game kept")
    for j in range(2, cfg.denominator):
        delta = Fraction(j, cfg.denominator)
        wit = lemma35_witness(delta, math.ceil(Fraction(4, 3) / delta + 6))
        residual = 3 * wit.params.get("residual", 0)
        kept = wit.checks()["represents_a"] and wit.checks()["represents_b"]
        broken += not kept
        print(f"{str(delta):>6} {wit.game.n:>3} {str(residual):>13} {str(delta / 2):>6}  {'yes' if kept else 'NO'}")
    print(f"{broken} of {cfg.denominator - 2} cells realize different games")
    return broken


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--denominator", type=int, default=CounterexampleConfig.denominator)
    run(CounterexampleConfig(ap.parse_args().denominator))


if __name__ == "__main__":
    main()
