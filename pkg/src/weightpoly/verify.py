"""Exact property suites over seeded random instances and fixed grids.

Each suite returns a :class:`VerifyResult` listing every violation as a
JSON-ready counterexample. The command line ``verify`` command and the
acceptance tests run the same code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .bounds import laakso_bounds, lemma41_bound, lemma42_bound, thm43_envelope
from .constructions import (
    ConstructionWitness,
    lemma31_witness,
    lemma32_witness,
    lemma33_witness,
    lemma34_witness,
    lemma35_witness,
    lemma36_witness,
)
from .games import WeightedRepresentation, classify_players, realize
from .polytope import diameter_l1
from .power import (
    distance_report,
    pair_lower_bound,
    penrose_banzhaf,
    prop54_harness,
    representation_compatible,
    shapley_shubik,
)
from .rational import fmt, fmt_vector, l1_distance, linf_distance
from .sampling import SecondarySampler, random_normalized_vector, random_representation

__all__ = [
    "SUITES",
    "VerifyConfig",
    "VerifyResult",
    "run_suite",
    "construction_witnesses",
    "power_index_grid",
    "GRID_Q",
    "GRID_DELTA",
    "GRID_DELTA_TWO_PASSERS",
    "GRID_Q_DELTA",
]


@dataclass(frozen=True)
class VerifyConfig:
    suite: str
    samples: int = 200
    seed: int = 0


@dataclass
class VerifyResult:
    suite: str
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, ok: bool, instance: Callable[[], dict]) -> None:
        self.checked += 1
        if not ok:
            self.violations.append(instance())

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{self.suite}: {status} ({self.checked} checks, {len(self.violations)} violations)"


def _rep_json(rep: WeightedRepresentation) -> dict:
    return {"quota": fmt(rep.quota), "weights": fmt_vector(rep.weights)}


# ---------------------------------------------------------------------------
# grids shared with the acceptance tests

# quotas j/20 and maximum weights j/20, j = 1..20
GRID_Q = tuple(Fraction(j, 20) for j in range(1, 21))
GRID_DELTA = tuple(Fraction(j, 20) for j in range(1, 21))
# the two-passer construction needs Delta < 1 and n >= 4/(3 Delta) + 6 <= 24
GRID_DELTA_TWO_PASSERS = tuple(Fraction(j + 1, 22) for j in range(1, 21))
GRID_Q_DELTA = tuple(
    (q, d)
    for q in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(4, 5))
    for d in (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 8))
)


def construction_witnesses() -> Iterator[ConstructionWitness]:
    """Every construction on its acceptance grid."""
    for s in range(2, 8):
        for k in range(1, s):
            for t in (0, 1, 2):
                yield lemma31_witness(k, s, t, "l1")
                yield lemma31_witness(k, s, t, "linf")
    for s in range(1, 9):
        for t in range(0, 9 - s):
            if s + t >= 2:
                yield lemma32_witness(s, t)
    for j, q in enumerate(GRID_Q):
        yield lemma33_witness(q, 2 + j % 4)
    for d in GRID_DELTA:
        yield lemma34_witness(d, math.ceil(1 / d + 1))
    for d in GRID_DELTA_TWO_PASSERS:
        yield lemma35_witness(d, math.ceil(Fraction(4, 3) / d + 6))
    for q, d in GRID_Q_DELTA:
        n = math.ceil(1 / d + 2)
        yield lemma36_witness(q, d, n, "l1")
        yield lemma36_witness(q, d, n, "linf")


def power_index_grid() -> tuple[tuple[Fraction, Fraction, int], ...]:
    """Ten ``(q, Delta, n)`` cells for the power-index lower bound."""
    cells = []
    for q in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
        for d in (Fraction(1, 2), Fraction(1, 5)):
            cells.append((q, d, math.ceil(1 / d + 2)))
    return tuple(cells)


# ---------------------------------------------------------------------------
# suites


def _lemma22(cfg: VerifyConfig, res: VerifyResult) -> None:
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.samples):
        n = int(rng.integers(2, 11))
        a, b = random_normalized_vector(rng, n), random_normalized_vector(rng, n)
        res.record(
            2 * linf_distance(a, b) <= l1_distance(a, b),
            lambda: {"a": fmt_vector(a), "b": fmt_vector(b)},
        )


def _lemma23(cfg: VerifyConfig, res: VerifyResult) -> None:
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.samples):
        w = random_normalized_vector(rng, int(rng.integers(2, 11)))
        res.record(laakso_bounds(w).holds, lambda: {"w": fmt_vector(w)})
    for n in range(1, 11):
        c = laakso_bounds([Fraction(1, n)] * n)
        res.record(
            c.lower_loose == c.lower == c.value == c.upper == n,
            lambda: {"uniform_n": n},
        )
    for k in range(1, 20):
        w = (Fraction(20 - k, 20), Fraction(k, 20))
        c = laakso_bounds(w)
        res.record(c.lower == c.value == c.upper, lambda: {"w": fmt_vector(w)})


def sampled_families(samples: int, seed: int, secondaries: int = 20, max_n: int = 6):
    """``(rep, game, [secondary reps])`` for random weighted games with ``2 <= n <= max_n``."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        rep = random_representation(rng, int(rng.integers(2, max_n + 1)))
        v = realize(rep)
        sampler = SecondarySampler(v, rng)
        yield rep, v, [sampler.sample() for _ in range(secondaries)]


def _thm43(cfg: VerifyConfig, res: VerifyResult) -> None:
    for rep, v, others in sampled_families(cfg.samples, cfg.seed):
        diam = diameter_l1(v).value
        for r in [rep] + others:
            bound, _ = thm43_envelope(r.quota, r.max_weight)
            res.record(
                diam <= 4 * r.max_weight / min(r.quota, 1 - r.quota) and diam <= bound,
                lambda: {"rep": _rep_json(r), "diameter_l1": fmt(diam)},
            )
            if r is rep:
                continue
            dist = l1_distance(rep.weights, r.weights)
            own, _ = thm43_envelope(rep.quota, rep.max_weight)
            res.record(
                dist <= own and dist <= bound,
                lambda: {"rep": _rep_json(rep), "other": _rep_json(r), "distance": fmt(dist)},
            )


def _side_pairs(cfg: VerifyConfig, side: str):
    """``(rep, x)`` where ``x`` satisfies the side constraint of ``[q; w]``.

    ``x`` is another normalized representation of the same game with a
    quota at least (winning side) or at most (losing side) ``q``.
    """
    for rep, _, others in sampled_families(cfg.samples, cfg.seed, secondaries=10):
        for r in others:
            if (side == "winning" and r.quota >= rep.quota) or (side == "losing" and r.quota <= rep.quota):
                yield rep, r.weights
            if (side == "winning" and rep.quota >= r.quota) or (side == "losing" and rep.quota <= r.quota):
                yield r, rep.weights


def _lemma41(cfg: VerifyConfig, res: VerifyResult) -> None:
    for rep, x in _side_pairs(cfg, "winning"):
        dist = l1_distance(rep.weights, x)
        res.record(
            dist <= lemma41_bound(rep.quota, rep.max_weight),
            lambda: {"rep": _rep_json(rep), "x": fmt_vector(x), "distance": fmt(dist)},
        )


def _lemma42(cfg: VerifyConfig, res: VerifyResult) -> None:
    for rep, x in _side_pairs(cfg, "losing"):
        dist = l1_distance(rep.weights, x)
        loose, refined = lemma42_bound(rep.quota, rep.max_weight)
        ok = dist <= loose and (refined is None or dist <= refined)
        res.record(ok, lambda: {"rep": _rep_json(rep), "x": fmt_vector(x), "distance": fmt(dist)})


def _section3(cfg: VerifyConfig, res: VerifyResult) -> None:
    for wit in construction_witnesses():
        res.record(wit.verified, wit.to_json)


def _section5(cfg: VerifyConfig, res: VerifyResult) -> None:
    for rep, v, others in sampled_families(cfg.samples, cfg.seed, secondaries=2):
        cls = classify_players(v)
        for phi in (shapley_shubik(v), penrose_banzhaf(v)):
            vals = phi.values
            sane = phi.efficient and all(vals[i] == 0 for i in range(v.n) if cls.is_null(i + 1))
            sane = sane and all(
                vals[i] == vals[j] for i in range(v.n) for j in range(i + 1, v.n) if cls.equivalent(i + 1, j + 1)
            )
            res.record(sane, lambda: {"rep": _rep_json(rep), phi.index: fmt_vector(vals)})
            for r in [rep] + others:
                rpt = distance_report(r, phi)
                res.record(rpt.holds, lambda: {"rep": _rep_json(r), "phi": phi.to_json(), **rpt.to_json()})
                half = pair_lower_bound(rep, r, phi)
                far = max(l1_distance(rep.weights, vals), l1_distance(r.weights, vals))
                res.record(far >= half, lambda: {"rep": _rep_json(rep), "other": _rep_json(r)})
            representation_compatible(v, phi)
    for q, d, n in power_index_grid():
        for index in ("ssi", "pbi"):
            record, game = prop54_harness(q, d, n, index)
            res.record(all(record.checks(game).values()), record.to_json)


SUITES: dict[str, Callable[[VerifyConfig, VerifyResult], None]] = {
    "lemma22": _lemma22,
    "lemma23": _lemma23,
    "thm43": _thm43,
    "lemma41": _lemma41,
    "lemma42": _lemma42,
    "section3": _section3,
    "section5": _section5,
}


def run_suite(cfg: VerifyConfig) -> VerifyResult:
    if cfg.suite not in SUITES:
        raise KeyError(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES)}")
    res = VerifyResult(cfg.suite)
    SUITES[cfg.suite](cfg, res)
    return res
