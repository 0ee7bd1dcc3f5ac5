"""Closed-form concentration metrics and distance bounds in terms of ``q`` and ``Delta``.

Every function here is exact: inputs are coerced to ``Fraction`` and the
results are rationals. Bounds that only exist when ``q > Delta`` are
returned as ``None`` otherwise, including at the boundary ``q == Delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .games import WeightedRepresentation
from .rational import RationalLike, as_fraction, fmt, l1_distance

__all__ = [
    "BoundError",
    "NotNormalized",
    "ZeroVector",
    "OutOfRange",
    "PreconditionViolated",
    "max_weight",
    "laakso_taagepera",
    "LaaksoChain",
    "laakso_bounds",
    "fractional_part_of_inverse",
    "thm43_envelope",
    "lemma41_bound",
    "lemma42_bound",
    "ConstrainedDistance",
    "check_constrained_distance",
    "BoundReport",
    "bound_report",
]


class BoundError(ValueError):
    pass


class NotNormalized(BoundError):
    pass


class ZeroVector(BoundError):
    pass


class OutOfRange(BoundError):
    pass


class PreconditionViolated(BoundError):
    """The candidate vector does not satisfy the coalition constraint it was checked against."""


def _normalized(w: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    w = tuple(as_fraction(x) for x in w)
    if not w or any(x < 0 for x in w) or sum(w) != 1:
        raise NotNormalized("expected a non-negative vector summing to one")
    return w


def max_weight(w: Sequence[RationalLike]) -> Fraction:
    """``Delta(w) = max_i w_i`` of a normalized weight vector."""
    return max(_normalized(w))


def laakso_taagepera(w: Sequence[RationalLike]) -> Fraction:
    """``(sum w_i)^2 / sum w_i^2``, the effective number of parties."""
    w = [as_fraction(x) for x in w]
    if any(x < 0 for x in w):
        raise BoundError("weights must be non-negative")
    squares = sum((x * x for x in w), Fraction(0))
    if squares == 0:
        raise ZeroVector("the index is undefined for the zero vector")
    return sum(w, Fraction(0)) ** 2 / squares


def fractional_part_of_inverse(delta: Fraction) -> Fraction:
    """``alpha = 1/Delta - floor(1/Delta)``, in ``[0, 1)``."""
    inv = 1 / delta
    return inv - math.floor(inv)


@dataclass(frozen=True)
class LaaksoChain:
    lower_loose: Fraction  # 1/Delta
    lower: Fraction  # 1/(Delta (1 - alpha (1 - alpha) Delta))
    value: Fraction  # L(w)
    upper: Fraction  # 1/(Delta^2 + (1 - Delta)^2 / (n - 1))
    upper_loose: Fraction  # 1/Delta^2

    @property
    def holds(self) -> bool:
        return self.lower_loose <= self.lower <= self.value <= self.upper <= self.upper_loose

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.lower_loose, self.lower, self.upper, self.upper_loose)


def laakso_bounds(w: Sequence[RationalLike]) -> LaaksoChain:
    """The four bounds on ``L(w)`` in terms of ``Delta(w)`` together with ``L(w)`` itself.

    With a single player everything equals one.
    """
    w = _normalized(w)
    n = len(w)
    delta = max(w)
    value = laakso_taagepera(w)
    if n == 1:
        one = Fraction(1)
        return LaaksoChain(one, one, value, one, one)
    alpha = fractional_part_of_inverse(delta)
    return LaaksoChain(
        lower_loose=1 / delta,
        lower=1 / (delta * (1 - alpha * (1 - alpha) * delta)),
        value=value,
        upper=1 / (delta**2 + (1 - delta) ** 2 / (n - 1)),
        upper_loose=1 / delta**2,
    )


def _check_q_delta(q: RationalLike, delta: RationalLike) -> tuple[Fraction, Fraction]:
    q, delta = as_fraction(q), as_fraction(delta)
    if not 0 < q < 1:
        raise OutOfRange(f"quota {q} is not in (0, 1)")
    if not 0 < delta <= 1:
        raise OutOfRange(f"maximum weight {delta} is not in (0, 1]")
    return q, delta


def thm43_envelope(q: RationalLike, delta: RationalLike) -> tuple[Fraction, Optional[Fraction]]:
    """Upper bounds on the L1 distance between two normalized representations.

    ``basic = min{2, 4 Delta / min{q, 1-q}}`` always; ``refined =
    2 Delta / min{q - Delta, 1 - q}`` only when ``q > Delta``.
    """
    q, delta = _check_q_delta(q, delta)
    basic = min(Fraction(2), 4 * delta / min(q, 1 - q))
    refined = 2 * delta / min(q - delta, 1 - q) if q > delta else None
    return basic, refined


def lemma41_bound(q: RationalLike, delta: RationalLike) -> Fraction:
    """``2 Delta / min{q + Delta, 1 - q}``: distance to any ``x`` giving every winning coalition at least ``q``."""
    q, delta = _check_q_delta(q, delta)
    return 2 * delta / min(q + delta, 1 - q)


def lemma42_bound(q: RationalLike, delta: RationalLike) -> tuple[Fraction, Optional[Fraction]]:
    """Distance bounds to any ``x`` giving every losing coalition at most ``q``.

    Returns ``(4 Delta / min{q, 1-q}, 2 Delta / min{q - Delta, 1 - q + Delta})``,
    the second only when ``q > Delta``.
    """
    q, delta = _check_q_delta(q, delta)
    loose = 4 * delta / min(q, 1 - q)
    refined = 2 * delta / min(q - delta, 1 - q + delta) if q > delta else None
    return loose, refined


@dataclass(frozen=True)
class ConstrainedDistance:
    side: str
    distance: Fraction
    bound: Fraction  # the tightest bound that applies
    holds: bool

    def to_json(self) -> dict:
        return {"side": self.side, "distance": fmt(self.distance), "bound": fmt(self.bound), "holds": self.holds}


def _coalition_sums(x: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    """Integer numerators of ``x(S)`` for every mask ``S`` and their common denominator."""
    den = math.lcm(*(v.denominator for v in x))
    ints = [int(v * den) for v in x]
    sums = np.zeros(1, dtype=np.int64 if den * len(x) < 2**62 else object)
    for v in ints:
        sums = np.concatenate([sums, sums + v])
    return sums, den


def check_constrained_distance(
    rep: WeightedRepresentation, x: Sequence[RationalLike], side: str
) -> ConstrainedDistance:
    """Check ``|w - x|_1`` against the bound for the given side constraint.

    ``side="winning"`` requires ``x(S) >= q`` for every winning ``S`` of
    ``[q; w]``; ``side="losing"`` requires ``x(T) <= q`` for every losing
    ``T``. The requirement is verified over all coalitions before the bound
    is evaluated.
    """
    if not rep.normalized:
        raise NotNormalized("the representation must have weights summing to one")
    if side not in ("winning", "losing"):
        raise ValueError(f"side must be 'winning' or 'losing', not {side!r}")
    x = _normalized(x)
    if len(x) != rep.n:
        raise ValueError("x and w differ in length")
    from .games import realize

    v = realize(rep)
    sums, den = _coalition_sums(x)
    q_scaled = rep.quota * den
    if side == "winning":
        ok = bool(np.all(sums[v.winning] >= q_scaled))
    else:
        ok = bool(np.all(sums[~v.winning] <= q_scaled))
    if not ok:
        raise PreconditionViolated(f"x violates the {side}-coalition constraint of the game")
    delta = rep.max_weight
    if side == "winning":
        bound = lemma41_bound(rep.quota, delta)
    else:
        loose, refined = lemma42_bound(rep.quota, delta)
        bound = loose if refined is None else min(loose, refined)
    dist = l1_distance(rep.weights, x)
    return ConstrainedDistance(side, dist, bound, dist <= bound)


@dataclass(frozen=True)
class BoundReport:
    q: Fraction
    delta: Fraction
    alpha: Fraction
    laakso: Fraction
    thm43_basic: Fraction
    thm43_refined: Optional[Fraction]
    lemma41: Fraction
    lemma42: Optional[Fraction]

    def to_json(self) -> dict:
        return {
            name: (None if value is None else fmt(value))
            for name, value in (
                ("q", self.q),
                ("delta", self.delta),
                ("alpha", self.alpha),
                ("laakso", self.laakso),
                ("thm43_basic", self.thm43_basic),
                ("thm43_refined", self.thm43_refined),
                ("lemma41", self.lemma41),
                ("lemma42", self.lemma42),
            )
        }


def bound_report(rep: WeightedRepresentation) -> BoundReport:
    """All closed-form quantities for a normalized representation with ``0 < q < 1``."""
    if not rep.normalized:
        raise NotNormalized("the representation must have weights summing to one")
    q = rep.quota
    delta = max_weight(rep.weights)
    basic, refined = thm43_envelope(q, delta)
    _, l42 = lemma42_bound(q, delta)
    return BoundReport(
        q=q,
        delta=delta,
        alpha=fractional_part_of_inverse(delta),
        laakso=laakso_taagepera(rep.weights),
        thm43_basic=basic,
        thm43_refined=refined,
        lemma41=lemma41_bound(q, delta),
        lemma42=l42,
    )
