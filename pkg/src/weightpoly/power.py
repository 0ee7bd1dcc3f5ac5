"""Exact power indices and their distance to normalized weights.

Shapley-Shubik and Penrose-Banzhaf values are computed by counting swings
over the ``2**n`` coalition bitmap, grouped by coalition size, so every
value is an exact rational. The harnesses at the end compare weight
vectors with power distributions and certify the triangle-inequality
lower bounds for pairs of representations of one game.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .bounds import thm43_envelope
from .constructions import lemma31_witness, lemma32_witness, lemma36_witness
from .games import Coalition, SimpleGame, WeightedRepresentation, _halves, popcounts, realize
from .polytope import perturb_toward, representable_point
from .rational import RationalLike, as_fraction, fmt, fmt_vector, l1_distance, linf_distance

__all__ = [
    "PowerError",
    "NotEfficient",
    "GamesDiffer",
    "OutOfRange",
    "PowerVector",
    "swing_counts",
    "shapley_shubik",
    "penrose_banzhaf",
    "power_index",
    "Compatibility",
    "representation_compatible",
    "DistanceReport",
    "distance_report",
    "pair_lower_bound",
    "Prop54Record",
    "prop54_harness",
]

INDICES = ("ssi", "pbi", "pbi_raw")


class PowerError(ValueError):
    pass


class NotEfficient(PowerError):
    pass


class GamesDiffer(PowerError):
    pass


class OutOfRange(PowerError):
    pass


@dataclass(frozen=True)
class PowerVector:
    values: tuple[Fraction, ...]
    index: str  # "ssi", "pbi" or "pbi_raw"

    @property
    def efficient(self) -> bool:
        return sum(self.values) == 1

    def to_json(self) -> dict:
        return {"index": self.index, "values": fmt_vector(self.values)}


def swing_counts(v: SimpleGame) -> np.ndarray:
    """``counts[i, k]``: coalitions of size ``k`` without player ``i + 1`` for which ``i + 1`` swings."""
    sizes = popcounts(v.n)
    counts = np.zeros((v.n, max(v.n, 1)), dtype=np.int64)
    for i in range(v.n):
        lo, hi = _halves(v.winning, i)
        lo_sizes, _ = _halves(sizes, i)
        swing = hi & ~lo
        counts[i] = np.bincount(lo_sizes[swing], minlength=max(v.n, 1))[: max(v.n, 1)]
    return counts


def shapley_shubik(v: SimpleGame) -> PowerVector:
    """``sum_S |S|! (n-1-|S|)! / n!`` over the swings ``S`` of each player."""
    n = v.n
    coef = [Fraction(math.factorial(k) * math.factorial(n - 1 - k), math.factorial(n)) for k in range(n)]
    counts = swing_counts(v)
    values = tuple(sum((int(c) * coef[k] for k, c in enumerate(row)), Fraction(0)) for row in counts)
    return PowerVector(values, "ssi")


def penrose_banzhaf(v: SimpleGame, normalized: bool = True) -> PowerVector:
    """Swing counts divided by ``2**(n-1)`` (raw) or by their total (normalized)."""
    swings = [int(row.sum()) for row in swing_counts(v)]
    if normalized:
        total = sum(swings)  # positive: the grand coalition wins and the empty one loses
        return PowerVector(tuple(Fraction(s, total) for s in swings), "pbi")
    return PowerVector(tuple(Fraction(s, 1 << (v.n - 1)) for s in swings), "pbi_raw")


def power_index(v: SimpleGame, index: str) -> PowerVector:
    if index == "ssi":
        return shapley_shubik(v)
    if index == "pbi":
        return penrose_banzhaf(v, normalized=True)
    if index == "pbi_raw":
        return penrose_banzhaf(v, normalized=False)
    raise PowerError(f"unknown index {index!r}; expected one of {INDICES}")


# ---------------------------------------------------------------------------
# power vectors as weights


@dataclass(frozen=True)
class Compatibility:
    """Whether a quota completes ``phi`` to a representation, with a witness either way."""

    compatible: bool
    max_losing: Fraction
    min_winning: Fraction
    quota: Optional[Fraction]  # midpoint of (max_losing, min_winning] when compatible
    losing: Coalition  # a losing coalition of largest phi-weight
    winning: Coalition  # a winning coalition of smallest phi-weight

    def to_json(self) -> dict:
        return {
            "compatible": self.compatible,
            "max_losing": fmt(self.max_losing),
            "min_winning": fmt(self.min_winning),
            "quota": None if self.quota is None else fmt(self.quota),
            "losing": list(self.losing.players()),
            "winning": list(self.winning.players()),
        }


def _coalition_numerators(x: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    den = math.lcm(*(v.denominator for v in x))
    sums = np.zeros(1, dtype=object)
    for v in x:
        sums = np.concatenate([sums, sums + int(v * den)])
    return sums, den


def representation_compatible(v: SimpleGame, phi: PowerVector) -> Compatibility:
    """Compare the heaviest losing and the lightest winning coalition under ``phi``."""
    if not phi.efficient:
        raise NotEfficient("power vector must sum to one")
    if len(phi.values) != v.n:
        raise PowerError("power vector length differs from the number of players")
    sums, den = _coalition_numerators(phi.values)
    losing = np.flatnonzero(~v.winning)
    winning = np.flatnonzero(v.winning)
    t = int(losing[np.argmax(sums[losing])])
    s = int(winning[np.argmin(sums[winning])])
    lo, hi = Fraction(int(sums[t]), den), Fraction(int(sums[s]), den)
    ok = lo < hi
    return Compatibility(ok, lo, hi, (lo + hi) / 2 if ok else None, Coalition(t, v.n), Coalition(s, v.n))


@dataclass(frozen=True)
class DistanceReport:
    l1: Fraction
    linf: Fraction
    bound: Optional[Fraction]  # 4 Delta / min{q, 1-q}, present when phi is compatible

    @property
    def holds(self) -> bool:
        return self.bound is None or self.l1 <= self.bound

    def to_json(self) -> dict:
        return {
            "l1": fmt(self.l1),
            "linf": fmt(self.linf),
            "bound": None if self.bound is None else fmt(self.bound),
            "holds": self.holds,
        }


def distance_report(rep: WeightedRepresentation, phi: PowerVector) -> DistanceReport:
    """Distances between normalized weights and ``phi``; bounded when ``phi`` is compatible."""
    if not rep.normalized:
        raise PowerError("the representation must be normalized")
    if not 0 < rep.quota < 1:
        raise OutOfRange(f"quota {rep.quota} is not in (0, 1)")
    w = rep.weights
    compat = representation_compatible(realize(rep), phi)
    bound = 4 * rep.max_weight / min(rep.quota, 1 - rep.quota) if compat.compatible else None
    return DistanceReport(l1_distance(w, phi.values), linf_distance(w, phi.values), bound)


_NORMS = {"l1": l1_distance, "linf": linf_distance}


def pair_lower_bound(
    rep_a: WeightedRepresentation, rep_b: WeightedRepresentation, phi: PowerVector, norm: str = "l1"
) -> Fraction:
    """``|w_a - w_b| / 2``, a lower bound on the larger distance from ``phi`` to either weight vector."""
    dist = _NORMS[norm]
    if realize(rep_a) != realize(rep_b):
        raise GamesDiffer("the two representations realize different games")
    half = dist(rep_a.weights, rep_b.weights) / 2
    far = max(dist(rep_a.weights, phi.values), dist(rep_b.weights, phi.values))
    if far < half:
        raise AssertionError("triangle inequality violated")
    return half


# ---------------------------------------------------------------------------
# lower bound certificate for arbitrary power indices


@dataclass(frozen=True)
class Prop54Record:
    q: Fraction
    delta: Fraction
    n: int
    index: str
    k: int
    s: int
    lam: Fraction  # min{2, 4 Delta / min{q, 1-q}} / 80
    w_prime: tuple[Fraction, ...]
    w_second: tuple[Fraction, ...]
    phi: tuple[Fraction, ...]
    chosen: tuple[Fraction, ...]  # the endpoint at distance >= lam/2 from phi
    w_bar: tuple[Fraction, ...]
    q_bar: Fraction
    guaranteed: Fraction  # min{2, 4 Delta / min{q, 1-q}} / 200

    @property
    def pair_distance(self) -> Fraction:
        return l1_distance(self.w_prime, self.w_second)

    @property
    def chosen_distance(self) -> Fraction:
        return l1_distance(self.chosen, self.phi)

    @property
    def final_distance(self) -> Fraction:
        return l1_distance(self.w_bar, self.phi)

    def checks(self, game: Optional[SimpleGame] = None) -> dict[str, bool]:
        d1 = l1_distance(self.w_prime, self.phi)
        d2 = l1_distance(self.w_second, self.phi)
        out = {
            "pair_at_least_lambda": self.pair_distance >= self.lam,
            "pair_inequality": max(d1, d2) >= self.pair_distance / 2,
            "chosen_at_least_half_lambda": self.chosen_distance >= self.lam / 2,
            "final_at_least_guarantee": self.final_distance >= self.guaranteed,
            "normalized": sum(self.w_bar) == 1 and min(self.w_bar) >= 0,
        }
        if game is not None:
            out["same_game"] = realize(WeightedRepresentation(self.q_bar, self.w_bar)) == game
        return out

    def to_json(self) -> dict:
        return {
            "q": fmt(self.q),
            "delta": fmt(self.delta),
            "n": self.n,
            "index": self.index,
            "k": self.k,
            "s": self.s,
            "lambda": fmt(self.lam),
            "w_prime": fmt_vector(self.w_prime),
            "w_second": fmt_vector(self.w_second),
            "pair_distance": fmt(self.pair_distance),
            "phi": fmt_vector(self.phi),
            "chosen_distance": fmt(self.chosen_distance),
            "w_bar": fmt_vector(self.w_bar),
            "q_bar": fmt(self.q_bar),
            "final_distance": fmt(self.final_distance),
            "guaranteed": fmt(self.guaranteed),
        }


def prop54_harness(q: RationalLike, delta: RationalLike, n: int, index: str = "ssi") -> tuple[Prop54Record, SimpleGame]:
    """Certify a representation of the ``(q, Delta)`` game far from its own power vector.

    Builds the game from ``(q, Delta)``, takes its far pair ``w', w''``,
    evaluates the index, keeps the endpoint at L1 distance at least
    ``lam/2`` from it, and moves that point into the interior by at most
    ``lam/2 - guaranteed`` so the representation realizes the same game.
    """
    q, delta = as_fraction(q), as_fraction(delta)
    if index not in ("ssi", "pbi"):
        raise OutOfRange(f"index must be 'ssi' or 'pbi', not {index!r}")
    try:
        base = lemma36_witness(q, delta, n)
    except ValueError as exc:
        raise OutOfRange(str(exc)) from exc
    k, s = base.params["k"], base.params["s"]
    game = base.game
    basic, _ = thm43_envelope(q, delta)
    lam = basic / 80
    guaranteed = basic / 200
    pair = lemma32_witness(s, n - s) if k == s else lemma31_witness(k, s, n - s, "l1")
    phi = power_index(game, index).values
    w1, w2 = pair.w_a, pair.w_b
    chosen = w1 if l1_distance(w1, phi) >= l1_distance(w2, phi) else w2
    anchor, _ = representable_point(game)
    w_bar, q_bar = perturb_toward(chosen, anchor, game, lam / 2 - guaranteed)
    record = Prop54Record(q, delta, n, index, k, s, lam, w1, w2, phi, chosen, w_bar, q_bar, guaranteed)
    return record, game
