"""The weight polytope of a simple game and its exact diameters.

``W(v)`` is the set of non-negative weight vectors summing to one with
``w(S) >= w(T)`` for every minimal winning ``S`` and maximal losing ``T``.
The pair rows are never materialised for optimisation: ``W(v)`` is the
projection of ``{(w, r): w(S) >= r >= w(T)}``, which needs one row per
coalition instead of one per pair. The pair rows stay available through
:meth:`WeightPolytope.pair_program` and are what :func:`membership` checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .games import SimpleGame, TooManyPlayers
from .lp import Constraint, LinearProgram, Relation, Status, WarmStartMaximizer, solve
from .rational import RationalLike, as_fraction, fmt, fmt_vector, l1_distance, linf_distance

__all__ = [
    "PolytopeError",
    "EmptyPolytope",
    "DimensionMismatch",
    "NotInPolytope",
    "NotWeighted",
    "BudgetZero",
    "AnchorNotStrict",
    "WeightPolytope",
    "DiameterCertificate",
    "QuotaInterval",
    "WeightednessResult",
    "build_polytope",
    "membership",
    "is_weighted",
    "quota_interval",
    "representable_point",
    "diameter_l1",
    "diameter_linf",
    "sign_pattern_values",
    "support_table",
    "perturb_toward",
    "PolytopeOracle",
]

L1_MAX_PLAYERS = 16


class PolytopeError(ValueError):
    pass


class EmptyPolytope(PolytopeError):
    """The game is not roughly weighted, so ``W(v)`` has no points."""


class DimensionMismatch(PolytopeError):
    pass


class NotInPolytope(PolytopeError):
    pass


class NotWeighted(PolytopeError):
    pass


class BudgetZero(PolytopeError):
    pass


class AnchorNotStrict(PolytopeError):
    pass


def _subset_sums(ints: Sequence[int]) -> np.ndarray:
    """``sums[mask] = sum of ints[i] over the bits i of mask``."""
    dtype = np.int64 if sum(abs(x) for x in ints) < 2**62 else object
    sums = np.zeros(1, dtype=dtype)
    for x in ints:
        sums = np.concatenate([sums, sums + x])
    return sums


@dataclass(frozen=True)
class WeightPolytope:
    n: int
    winning: tuple[int, ...]  # minimal winning coalitions (bitmasks)
    losing: tuple[int, ...]  # maximal losing coalitions (bitmasks)
    _lifted_rows: list = field(default_factory=list, repr=False, compare=False, hash=False)

    def pair_rows(self) -> Iterator[tuple[int, int]]:
        """One ``(S, T)`` per row ``w(S) - w(T) >= 0``."""
        for s in self.winning:
            for t in self.losing:
                yield s, t

    @property
    def num_pair_rows(self) -> int:
        return len(self.winning) * len(self.losing)

    def _indicator(self, mask: int) -> list[int]:
        return [mask >> i & 1 for i in range(self.n)]

    def pair_constraints(self) -> list[Constraint]:
        rows = []
        for s, t in self.pair_rows():
            coeffs = [a - b for a, b in zip(self._indicator(s), self._indicator(t))]
            rows.append(Constraint(tuple(coeffs), Relation.GE, Fraction(0)))
        rows.append(Constraint((1,) * self.n, Relation.EQ, Fraction(1)))
        return rows

    def pair_program(self, objective: Sequence[RationalLike]) -> LinearProgram:
        """``max objective.w`` over the verbatim pair-row description."""
        return LinearProgram(tuple(objective), tuple(self.pair_constraints()))

    def lifted_constraints(self, margin: bool = False) -> tuple[Constraint, ...]:
        """Rows over ``(w, r)`` or, with ``margin``, ``(w, r, delta)``.

        ``w(S) - r (- delta) >= 0`` for minimal winning ``S``,
        ``r - w(T) >= 0`` for maximal losing ``T``, and ``sum(w) == 1``.
        """
        key = 1 if margin else 0
        cache = self._lifted_rows
        while len(cache) <= key:
            cache.append(None)
        if cache[key] is None:
            tail = (-1, -1) if margin else (-1,)
            pad = (0,) if margin else ()
            rows = [Constraint(tuple(self._indicator(s)) + tail, Relation.GE, Fraction(0)) for s in self.winning]
            rows += [Constraint(tuple(-x for x in self._indicator(t)) + (1,) + pad, Relation.GE, Fraction(0)) for t in self.losing]
            rows.append(Constraint((1,) * self.n + (0,) + pad, Relation.EQ, Fraction(1)))
            cache[key] = tuple(rows)
        return cache[key]

    def contains(self, w: Sequence[Fraction]) -> bool:
        if len(w) != self.n:
            raise DimensionMismatch(f"expected {self.n} weights, got {len(w)}")
        w = [as_fraction(x) for x in w]
        if any(x < 0 for x in w) or sum(w) != 1:
            return False
        lo, hi = self.separation(w)
        return lo <= hi

    def separation(self, w: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
        """``(max w(T) over maximal losing T, min w(S) over minimal winning S)``.

        Works on the integer vector ``D w`` and a table of all subset sums, so
        the comparison stays exact.
        """
        w = [as_fraction(x) for x in w]
        den = math.lcm(*(x.denominator for x in w))
        ints = [int(x * den) for x in w]
        sums = _subset_sums(ints)
        max_losing = Fraction(int(sums[np.array(self.losing, dtype=np.int64)].max()), den) if self.losing else Fraction(-1)
        min_winning = Fraction(int(sums[np.array(self.winning, dtype=np.int64)].min()), den)
        return max_losing, min_winning


def build_polytope(v: SimpleGame) -> WeightPolytope:
    return WeightPolytope(v.n, v.minimal_winning_masks, v.maximal_losing_masks)


def membership(P: WeightPolytope, w: Sequence[RationalLike]) -> bool:
    """True iff ``w`` satisfies every pair row and the simplex rows exactly."""
    return P.contains([as_fraction(x) for x in w])


class PolytopeOracle:
    """Memoised ``max c.w`` over ``W(v)`` for a fixed polytope."""

    def __init__(self, P: WeightPolytope):
        self.P = P
        self._cache: dict[tuple[Fraction, ...], tuple[Fraction, tuple[Fraction, ...]]] = {}
        self.lp_count = 0
        # successive objectives are re-optimised from the previous optimal vertex
        self._table: Optional[list[Fraction]] = None
        self._solver = WarmStartMaximizer(LinearProgram((Fraction(0),) * (P.n + 1), P.lifted_constraints()))

    def maximize(self, objective: Sequence[RationalLike]) -> tuple[Fraction, tuple[Fraction, ...]]:
        c = tuple(as_fraction(x) for x in objective)
        if len(c) != self.P.n:
            raise DimensionMismatch(f"objective has {len(c)} entries for {self.P.n} players")
        hit = self._cache.get(c)
        if hit is not None:
            return hit
        out = self._solver.maximize(c + (Fraction(0),), with_duals=False)
        self.lp_count += 1
        if out.status is not Status.OPTIMAL:
            # the lifted program is bounded, so anything else means W(v) is empty
            raise EmptyPolytope("the weight polytope is empty")
        w = out.point[: self.P.n]
        if not self.P.contains(w):
            raise AssertionError("solver returned a point outside W(v)")
        self._cache[c] = (out.value, w)
        return out.value, w

    def support(self, mask: int) -> tuple[Fraction, tuple[Fraction, ...]]:
        """``max w(P)`` for the coalition ``P`` given as a bitmask."""
        return self.maximize([Fraction(mask >> i & 1) for i in range(self.P.n)])

    def support_table(self) -> list[Fraction]:
        """``max w(P)`` for every mask ``P``, visited in Gray-code order.

        Only values are kept; points are not checked one by one here, the
        callers re-derive and check the few they report.
        """
        if self._table is None:
            n = self.P.n
            table = [Fraction(0)] * (1 << n)
            zero = (Fraction(0),)
            for k in range(1, 1 << n):
                mask = k ^ (k >> 1)
                c = tuple(Fraction(mask >> i & 1) for i in range(n)) + zero
                out = self._solver.maximize(c, with_duals=False)
                if not out.optimal:
                    raise EmptyPolytope("the weight polytope is empty")
                table[mask] = out.value
                self.lp_count += 1
            self._table = table
        return self._table


@dataclass(frozen=True)
class WeightednessResult:
    weighted: bool
    margin: Fraction  # optimal strict-separation margin delta*
    weights: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return self.weighted


def is_weighted(v: SimpleGame) -> WeightednessResult:
    """Maximize ``delta`` with ``w(S) - w(T) >= delta`` over all pair rows."""
    P = build_polytope(v)
    n = v.n
    lp = LinearProgram(
        (Fraction(0),) * (n + 1) + (Fraction(1),),
        P.lifted_constraints(margin=True),
        (Fraction(0),) * (n + 1) + (None,),
    )
    out = solve(lp)
    if out.status is not Status.OPTIMAL:
        raise AssertionError(f"margin program ended {out.status}")
    return WeightednessResult(out.value > 0, out.value, out.point[:n])


@dataclass(frozen=True)
class QuotaInterval:
    """Quotas in ``(low, high]`` complete ``w`` to a representation."""

    low: Fraction  # max weight of a maximal losing coalition
    high: Fraction  # min weight of a minimal winning coalition

    @property
    def degenerate(self) -> bool:
        return self.low >= self.high

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def __contains__(self, q: object) -> bool:
        return self.low < q <= self.high


def quota_interval(v: SimpleGame, w: Sequence[RationalLike]) -> QuotaInterval:
    P = build_polytope(v)
    w = [as_fraction(x) for x in w]
    if not P.contains(w):
        raise NotInPolytope("weight vector is not in W(v)")
    return QuotaInterval(*P.separation(w))


def representable_point(v: SimpleGame) -> tuple[tuple[Fraction, ...], Fraction]:
    """A normalized representation ``(w, q)`` of ``v`` with ``w`` maximally separated."""
    res = is_weighted(v)
    if not res.weighted:
        raise NotWeighted("game admits no weighted representation")
    return res.weights, quota_interval(v, res.weights).midpoint


@dataclass(frozen=True)
class DiameterCertificate:
    norm: str  # "l1" or "linf"
    value: Fraction
    witness_a: tuple[Fraction, ...]
    witness_b: tuple[Fraction, ...]

    def distance(self) -> Fraction:
        f = l1_distance if self.norm == "l1" else linf_distance
        return f(self.witness_a, self.witness_b)

    def to_json(self) -> dict:
        return {
            "norm": self.norm,
            "value": fmt(self.value),
            "witness_a": fmt_vector(self.witness_a),
            "witness_b": fmt_vector(self.witness_b),
        }


def _check_size(v: SimpleGame, limit: int) -> None:
    if v.n > limit:
        raise TooManyPlayers(f"n={v.n} exceeds the limit of {limit} for this computation")


def diameter_linf(v: SimpleGame, oracle: Optional[PolytopeOracle] = None) -> DiameterCertificate:
    """``max_i (max w_i - min w_i)`` over ``W(v)``; ``2n`` programs."""
    oracle = oracle or PolytopeOracle(build_polytope(v))
    full = (1 << v.n) - 1
    best = None
    for i in range(v.n):
        hi, a = oracle.support(1 << i)
        rest, b = oracle.support(full ^ (1 << i))
        spread = hi - (1 - rest)
        if best is None or spread > best[0]:
            best = (spread, a, b)
    return DiameterCertificate("linf", *best)


def support_table(v: SimpleGame, oracle: Optional[PolytopeOracle] = None) -> list[Fraction]:
    """``g[mask] = max w(mask)`` over ``W(v)`` for every coalition mask.

    Coalitions are visited in Gray-code order, so consecutive objectives
    differ in one coordinate and each program restarts from the previous
    optimal vertex. Costs ``2**n - 1`` programs.
    """
    _check_size(v, L1_MAX_PLAYERS)
    oracle = oracle or PolytopeOracle(build_polytope(v))
    return oracle.support_table()


def sign_pattern_values(v: SimpleGame, oracle: Optional[PolytopeOracle] = None) -> dict[int, Fraction]:
    """``f(sigma) = max sigma.w`` for every sign vector, keyed by the mask of ``+1`` entries."""
    # sigma.w = 2 w(P) - 1 on the simplex
    return {mask: 2 * g - 1 for mask, g in enumerate(support_table(v, oracle))}


def diameter_l1(v: SimpleGame, oracle: Optional[PolytopeOracle] = None) -> DiameterCertificate:
    """Exact L1 diameter of ``W(v)`` with a witness pair.

    On the simplex ``|w - w'|_1 = 2 max_P (w - w')(P)``, attained at
    ``P = {i : w_i > w'_i}``, so the diameter is ``2 max_P F(P)`` with
    ``F(P) = max w(P) + max w(N \\ P) - 1``, i.e. ``f(sigma) + f(-sigma)``
    over sign vectors. The witnesses maximise ``w(P)`` and ``w(N \\ P)`` for
    the smallest maximising ``P`` that contains player 1.
    """
    _check_size(v, L1_MAX_PLAYERS)
    oracle = oracle or PolytopeOracle(build_polytope(v))
    g = support_table(v, oracle)
    full = (1 << v.n) - 1
    best_val, best_mask = None, full
    for mask in range(1, full + 1, 2):
        val = g[mask] + g[full ^ mask] - 1
        if best_val is None or val > best_val:
            best_val, best_mask = val, mask
    _, a = oracle.support(best_mask)
    if best_mask == full:
        return DiameterCertificate("l1", Fraction(0), a, a)
    _, b = oracle.support(full ^ best_mask)
    return DiameterCertificate("l1", 2 * best_val, a, b)


def perturb_toward(
    w_from: Sequence[RationalLike],
    anchor: Sequence[RationalLike],
    v: SimpleGame,
    budget: RationalLike,
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Move ``w_from`` toward a strictly separated ``anchor`` by at most ``budget`` in L1.

    Returns ``(w_bar, q_bar)`` with ``[q_bar; w_bar] = v``. A point that is
    already strictly separated is returned unchanged.
    """
    budget = as_fraction(budget)
    if budget <= 0:
        raise BudgetZero("perturbation budget must be positive")
    w_from = tuple(as_fraction(x) for x in w_from)
    anchor = tuple(as_fraction(x) for x in anchor)
    if quota_interval(v, anchor).degenerate:
        raise AnchorNotStrict("anchor does not separate winning from losing coalitions")
    start = quota_interval(v, w_from)
    if not start.degenerate:
        return w_from, start.midpoint
    dist = l1_distance(anchor, w_from)
    lam = min(Fraction(1, 2), budget / dist)
    for _ in range(60):
        w_bar = tuple((1 - lam) * x + lam * y for x, y in zip(w_from, anchor))
        iv = quota_interval(v, w_bar)
        if not iv.degenerate:
            return w_bar, iv.midpoint
        lam /= 2
    raise AssertionError("perturbation failed to reach the interior")
