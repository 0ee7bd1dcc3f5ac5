"""Simple games and weighted representations over players ``1..n``.

Coalitions are bitmasks: player ``i`` is bit ``i - 1``. A ``SimpleGame``
keeps its full characteristic function as a read-only boolean array of
length ``2**n``, which caps the player count at ``MAX_PLAYERS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .rational import RationalLike, as_fraction

MAX_PLAYERS = 24

__all__ = [
    "MAX_PLAYERS",
    "GameError",
    "InvalidRepresentation",
    "InvalidGame",
    "TooManyPlayers",
    "EpsilonTooLarge",
    "Coalition",
    "WeightedRepresentation",
    "SimpleGame",
    "PlayerClassification",
    "evaluate",
    "realize",
    "minimal_winning",
    "maximal_losing",
    "dual",
    "min_losing_slack",
    "dual_representation",
    "classify_players",
    "popcounts",
]


class GameError(ValueError):
    pass


class InvalidRepresentation(GameError):
    """Negative weight, non-positive quota, or quota above the weight total."""


class InvalidGame(GameError):
    """Characteristic function violates v(empty)=0, v(N)=1 or monotonicity."""


class TooManyPlayers(GameError):
    pass


class EpsilonTooLarge(GameError):
    pass


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidGame("a game needs at least one player")
    if n > MAX_PLAYERS:
        raise TooManyPlayers(f"n={n} exceeds the explicit-bitmap limit of {MAX_PLAYERS}")


@dataclass(frozen=True, order=True)
class Coalition:
    members: int
    n: int

    def __post_init__(self) -> None:
        if self.members < 0 or self.members >> self.n:
            raise ValueError(f"coalition mask {self.members:#b} has bits outside players 1..{self.n}")

    @classmethod
    def of(cls, players: Iterable[int], n: int) -> "Coalition":
        mask = 0
        for p in players:
            if not 1 <= p <= n:
                raise ValueError(f"player {p} outside 1..{n}")
            mask |= 1 << (p - 1)
        return cls(mask, n)

    def players(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.members >> i & 1)

    def __len__(self) -> int:
        return bin(self.members).count("1")

    def __contains__(self, player: int) -> bool:
        return 1 <= player <= self.n and bool(self.members >> (player - 1) & 1)

    def __iter__(self):
        return iter(self.players())

    def issubset(self, other: "Coalition") -> bool:
        return self.members & ~other.members == 0

    def union(self, other: "Coalition") -> "Coalition":
        return Coalition(self.members | other.members, max(self.n, other.n))

    def complement(self) -> "Coalition":
        return Coalition(((1 << self.n) - 1) ^ self.members, self.n)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.players())) + "}"


@dataclass(frozen=True)
class WeightedRepresentation:
    """Quota and non-negative weights; ``S`` wins iff ``w(S) >= quota``."""

    quota: Fraction
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        q = as_fraction(self.quota)
        w = tuple(as_fraction(x) for x in self.weights)
        object.__setattr__(self, "quota", q)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidRepresentation("empty weight vector")
        if any(x < 0 for x in w):
            raise InvalidRepresentation("weights must be non-negative")
        if q <= 0:
            raise InvalidRepresentation("quota must be positive")
        if q > sum(w):
            raise InvalidRepresentation("quota exceeds the total weight, N would lose")

    @classmethod
    def of(cls, quota: RationalLike, weights: Sequence[RationalLike]) -> "WeightedRepresentation":
        return cls(as_fraction(quota), tuple(as_fraction(x) for x in weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def normalized(self) -> bool:
        return self.total == 1

    @property
    def max_weight(self) -> Fraction:
        return max(self.weights)

    def weight(self, coalition: Union[Coalition, int]) -> Fraction:
        mask = coalition.members if isinstance(coalition, Coalition) else coalition
        return sum((x for i, x in enumerate(self.weights) if mask >> i & 1), Fraction(0))

    def normalize(self) -> "WeightedRepresentation":
        t = self.total
        return WeightedRepresentation(self.quota / t, tuple(x / t for x in self.weights))

    def __str__(self) -> str:
        return f"[{self.quota}; " + ", ".join(str(x) for x in self.weights) + "]"


def _halves(arr: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Views of ``arr`` over coalitions without / with player ``i + 1``."""
    view = arr.reshape(-1, 2, 1 << i)
    return view[:, 0, :], view[:, 1, :]


def popcounts(n: int) -> np.ndarray:
    sizes = np.zeros(1, dtype=np.int8)
    for _ in range(n):
        sizes = np.concatenate([sizes, sizes + 1])
    return sizes


class SimpleGame:
    """Monotone boolean function on the coalitions of ``n`` players."""

    __slots__ = ("n", "winning", "__dict__")

    def __init__(self, n: int, winning: Union[np.ndarray, Sequence[bool]]):
        _check_n(n)
        arr = np.array(winning, dtype=bool)
        if arr.shape != (1 << n,):
            raise InvalidGame(f"expected {1 << n} entries, got {arr.shape}")
        if arr[0]:
            raise InvalidGame("the empty coalition must lose")
        if not arr[-1]:
            raise InvalidGame("the grand coalition must win")
        for i in range(n):
            lo, hi = _halves(arr, i)
            if np.any(lo & ~hi):
                raise InvalidGame(f"not monotone in player {i + 1}")
        arr.flags.writeable = False
        self.n = n
        self.winning = arr

    @classmethod
    def from_minimal_winning(cls, n: int, coalitions: Iterable[Iterable[int]]) -> "SimpleGame":
        """Upward closure of the given coalitions (1-based player lists)."""
        _check_n(n)
        arr = np.zeros(1 << n, dtype=bool)
        for c in coalitions:
            arr[Coalition.of(c, n).members] = True
        for i in range(n):
            lo, hi = _halves(arr, i)
            hi |= lo
        return cls(n, arr)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def is_winning(self, coalition: Union[Coalition, int]) -> bool:
        mask = coalition.members if isinstance(coalition, Coalition) else coalition
        return bool(self.winning[mask])

    __call__ = is_winning

    @cached_property
    def minimal_winning_masks(self) -> tuple[int, ...]:
        mw = self.winning.copy()
        for i in range(self.n):
            lo, hi = _halves(mw, i)
            lo_win, _ = _halves(self.winning, i)
            hi &= ~lo_win
        return tuple(int(m) for m in np.flatnonzero(mw))

    @cached_property
    def maximal_losing_masks(self) -> tuple[int, ...]:
        ml = ~self.winning
        for i in range(self.n):
            lo, hi = _halves(ml, i)
            _, hi_win = _halves(self.winning, i)
            lo &= hi_win
        return tuple(int(m) for m in np.flatnonzero(ml))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGame):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.winning, other.winning)

    def __hash__(self) -> int:
        return hash((self.n, self.winning.tobytes()))

    def __repr__(self) -> str:
        mw = ", ".join(repr(Coalition(m, self.n)) for m in self.minimal_winning_masks[:6])
        more = ", ..." if len(self.minimal_winning_masks) > 6 else ""
        return f"SimpleGame(n={self.n}, minimal winning: {mw}{more})"


def evaluate(rep: WeightedRepresentation, coalition: Union[Coalition, int]) -> bool:
    """True iff the coalition's weight meets the quota."""
    mask = coalition.members if isinstance(coalition, Coalition) else coalition
    if mask < 0 or mask >> rep.n:
        raise ValueError("coalition has players outside the representation")
    return rep.weight(mask) >= rep.quota


def _integer_scaled(rep: WeightedRepresentation) -> tuple[int, list[int]]:
    den = math.lcm(rep.quota.denominator, *(x.denominator for x in rep.weights))
    return int(rep.quota * den), [int(x * den) for x in rep.weights]


def realize(rep: WeightedRepresentation) -> SimpleGame:
    """The simple game ``[q; w]``."""
    _check_n(rep.n)
    quota, weights = _integer_scaled(rep)
    dtype = np.int64 if sum(weights) < 2**62 else object
    sums = np.zeros(1, dtype=dtype)
    for x in weights:
        sums = np.concatenate([sums, sums + x])
    return SimpleGame(rep.n, sums >= quota)


def minimal_winning(v: SimpleGame) -> list[Coalition]:
    return [Coalition(m, v.n) for m in v.minimal_winning_masks]


def maximal_losing(v: SimpleGame) -> list[Coalition]:
    return [Coalition(m, v.n) for m in v.maximal_losing_masks]


def dual(v: SimpleGame) -> SimpleGame:
    """``v^d(S) = 1 - v(N \\ S)``; complementing a mask reverses the index order."""
    return SimpleGame(v.n, ~v.winning[::-1])


def min_losing_slack(rep: WeightedRepresentation) -> Fraction:
    """``min{q - w(S) : S losing}``, attained on a maximal losing coalition."""
    v = realize(rep)
    return min(rep.quota - rep.weight(m) for m in v.maximal_losing_masks)


def dual_representation(rep: WeightedRepresentation, epsilon: Optional[RationalLike] = None) -> WeightedRepresentation:
    """Normalized representation ``(1 - q + epsilon; w)`` of the dual game.

    ``epsilon`` must lie strictly between zero and the minimum losing slack;
    it defaults to half of that slack.
    """
    if not rep.normalized:
        raise InvalidRepresentation("dual_representation needs normalized weights")
    slack = min_losing_slack(rep)
    eps = slack / 2 if epsilon is None else as_fraction(epsilon)
    if eps <= 0:
        raise EpsilonTooLarge("epsilon must be positive")
    if eps >= slack:
        raise EpsilonTooLarge(f"epsilon={eps} is not below the minimum losing slack {slack}")
    return WeightedRepresentation(1 - rep.quota + eps, rep.weights)


@dataclass(frozen=True)
class PlayerClassification:
    kinds: tuple[str, ...]  # per player: "null", "passer" or "neither"
    classes: tuple[tuple[int, ...], ...]  # equivalence classes, 1-based, sorted

    def is_null(self, player: int) -> bool:
        return self.kinds[player - 1] == "null"

    def is_passer(self, player: int) -> bool:
        return self.kinds[player - 1] == "passer"

    def equivalent(self, i: int, j: int) -> bool:
        return any(i in c and j in c for c in self.classes)


def _equivalent(v: SimpleGame, i: int, j: int) -> bool:
    # 0-based i < j; compare v(S + i) with v(S + j) for S avoiding both
    view = v.winning.reshape(-1, 2, 1 << (j - i - 1), 2, 1 << i)
    return bool(np.array_equal(view[:, 0, :, 1, :], view[:, 1, :, 0, :]))


def classify_players(v: SimpleGame) -> PlayerClassification:
    kinds = []
    for i in range(v.n):
        lo, hi = _halves(v.winning, i)
        if np.array_equal(lo, hi):
            kinds.append("null")
        elif v.winning[1 << i]:
            kinds.append("passer")
        else:
            kinds.append("neither")
    classes: list[list[int]] = []
    for i in range(v.n):
        for cls in classes:
            if _equivalent(v, cls[0], i):
                cls.append(i)
                break
        else:
            classes.append([i])
    return PlayerClassification(tuple(kinds), tuple(tuple(p + 1 for p in c) for c in classes))
