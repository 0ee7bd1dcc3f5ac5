"""Seeded generators of exact random instances.

All randomness comes from a ``numpy.random.Generator``; every value handed
out is a ``Fraction`` built from integers, so a seed fixes the instance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .games import SimpleGame, WeightedRepresentation, realize
from .polytope import PolytopeOracle, build_polytope, quota_interval, representable_point

__all__ = [
    "random_normalized_vector",
    "random_representation",
    "SecondarySampler",
    "random_with_max_weight",
    "sample_realized",
]


def random_normalized_vector(rng: np.random.Generator, n: int, scale: int = 30) -> tuple[Fraction, ...]:
    """Non-negative integers in ``[0, scale]`` divided by their sum (never all zero)."""
    while True:
        raw = [int(x) for x in rng.integers(0, scale + 1, size=n)]
        total = sum(raw)
        if total:
            return tuple(Fraction(x, total) for x in raw)


def random_representation(
    rng: np.random.Generator, n: int, scale: int = 12, strict_quota: bool = True
) -> WeightedRepresentation:
    """Normalized ``[q; w]`` from random integer weights and an integer quota.

    With ``strict_quota`` the quota lies strictly below the total, so
    ``0 < q < 1``.
    """
    while True:
        raw = [int(x) for x in rng.integers(0, scale + 1, size=n)]
        total = sum(raw)
        if total < 2:
            continue
        quota = int(rng.integers(1, total if strict_quota else total + 1))
        return WeightedRepresentation.of(quota, raw).normalize()


def _random_rational_between(rng: np.random.Generator, low: Fraction, high: Fraction, grain: int = 97) -> Fraction:
    """A rational strictly inside ``(low, high)``."""
    k = int(rng.integers(1, grain))
    return low + (high - low) * Fraction(k, grain)


class SecondarySampler:
    """Further representations of a fixed weighted game.

    Points are convex combinations of a strictly separated anchor with a
    few random vertices of ``W(v)``; the anchor weight is positive, so each
    point is strictly separated and a random quota inside its interval
    completes it.
    """

    def __init__(self, v: SimpleGame, rng: np.random.Generator, vertices: int = 3):
        self.v = v
        self.rng = rng
        self.anchor, _ = representable_point(v)
        oracle = PolytopeOracle(build_polytope(v))
        self.vertices = []
        for _ in range(vertices):
            c = [Fraction(int(x)) for x in rng.integers(-5, 6, size=v.n)]
            self.vertices.append(oracle.maximize(c)[1])

    def sample(self) -> WeightedRepresentation:
        rng = self.rng
        coefs = [int(x) for x in rng.integers(0, 10, size=len(self.vertices))]
        anchor_coef = int(rng.integers(1, 10))
        total = anchor_coef + sum(coefs)
        w = [Fraction(anchor_coef, total) * a for a in self.anchor]
        for c, vert in zip(coefs, self.vertices):
            w = [x + Fraction(c, total) * y for x, y in zip(w, vert)]
        iv = quota_interval(self.v, w)
        q = _random_rational_between(rng, iv.low, iv.high)
        return WeightedRepresentation(q, tuple(w))


def random_with_max_weight(
    rng: np.random.Generator, n: int, q: Fraction, delta: Fraction, moves: Optional[int] = None
) -> WeightedRepresentation:
    """Normalized ``[q; w]`` with ``max w = delta`` exactly; needs ``n delta >= 1``.

    Starts from ``delta`` followed by an even split of the rest, then makes
    random exact transfers between the other players that keep every weight
    in ``[0, delta]``.
    """
    if n * delta < 1:
        raise ValueError("n * delta must be at least one")
    rest = [(1 - delta) / (n - 1)] * (n - 1) if n > 1 else []
    for _ in range(moves if moves is not None else 3 * n):
        if len(rest) < 2:
            break
        i, j = (int(x) for x in rng.choice(len(rest), size=2, replace=False))
        room = min(rest[i], delta - rest[j])
        t = room * Fraction(int(rng.integers(0, 9)), 8)
        rest[i] -= t
        rest[j] += t
    return WeightedRepresentation(q, (delta, *rest))


def sample_realized(rng: np.random.Generator, n: int) -> tuple[WeightedRepresentation, SimpleGame]:
    rep = random_representation(rng, n)
    return rep, realize(rep)
