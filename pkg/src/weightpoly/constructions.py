"""Worst-case weight-vector pairs for games with equal-weight blocks.

``v_{k,s,t}`` has ``s`` players of weight one, ``t`` players of weight zero
and quota ``k``. The generators below build explicit pairs of points of the
weight polytope (or of representations) that are provably far apart, and
wrap them in a :class:`ConstructionWitness` that re-checks every promise
exactly: same realized game, normalization, maximum weight where promised,
and the guaranteed distances.

A witness never hides a failed check; ``checks()`` lists each one and
``verified`` is their conjunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import thm43_envelope
from .games import MAX_PLAYERS, SimpleGame, WeightedRepresentation, realize
from .polytope import build_polytope, perturb_toward, quota_interval, representable_point
from .rational import RationalLike, as_fraction, fmt, fmt_vector, l1_distance, linf_distance

__all__ = [
    "ConstructionError",
    "BadParameters",
    "OutOfRange",
    "ConstructionWitness",
    "make_vkst",
    "lemma31_witness",
    "lemma32_witness",
    "lemma33_witness",
    "lemma34_witness",
    "lemma35_witness",
    "lemma36_witness",
]


class ConstructionError(ValueError):
    pass


class BadParameters(ConstructionError):
    pass


class OutOfRange(ConstructionError):
    pass


def _vec(xs: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


@dataclass(frozen=True)
class ConstructionWitness:
    kind: str
    game: SimpleGame
    w_a: tuple[Fraction, ...]
    w_b: tuple[Fraction, ...]
    q_a: Optional[Fraction]  # None when w_a lies where no quota completes it
    q_b: Optional[Fraction]
    guaranteed_l1: Optional[Fraction]
    guaranteed_linf: Optional[Fraction]
    params: dict = field(default_factory=dict)
    max_weight: Optional[Fraction] = None  # promised Delta of w_a (and w_b if max_weight_both)
    max_weight_both: bool = False

    @property
    def l1_distance(self) -> Fraction:
        return l1_distance(self.w_a, self.w_b)

    @property
    def linf_distance(self) -> Fraction:
        return linf_distance(self.w_a, self.w_b)

    @property
    def rep_a(self) -> Optional[WeightedRepresentation]:
        return None if self.q_a is None else WeightedRepresentation(self.q_a, self.w_a)

    @property
    def rep_b(self) -> Optional[WeightedRepresentation]:
        return None if self.q_b is None else WeightedRepresentation(self.q_b, self.w_b)

    def checks(self) -> dict[str, bool]:
        """Every promise of the construction, each evaluated exactly."""
        out = {
            "normalized": sum(self.w_a) == 1 and sum(self.w_b) == 1
            and all(x >= 0 for x in self.w_a + self.w_b),
        }
        P = build_polytope(self.game)
        out["members"] = P.contains(self.w_a) and P.contains(self.w_b)
        for name, rep in (("represents_a", self.rep_a), ("represents_b", self.rep_b)):
            if rep is not None:
                out[name] = realize(rep) == self.game
        if self.max_weight is not None:
            ok = max(self.w_a) == self.max_weight
            if self.max_weight_both:
                ok = ok and max(self.w_b) == self.max_weight
            out["max_weight"] = ok
        if self.guaranteed_l1 is not None:
            out["l1_guarantee"] = self.l1_distance >= self.guaranteed_l1
        if self.guaranteed_linf is not None:
            out["linf_guarantee"] = self.linf_distance >= self.guaranteed_linf
        return out

    @property
    def verified(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        opt = lambda x: None if x is None else fmt(x)  # noqa: E731
        return {
            "kind": self.kind,
            "n": self.game.n,
            "w_a": fmt_vector(self.w_a),
            "q_a": opt(self.q_a),
            "w_b": fmt_vector(self.w_b),
            "q_b": opt(self.q_b),
            "l1_distance": fmt(self.l1_distance),
            "linf_distance": fmt(self.linf_distance),
            "guaranteed_l1": opt(self.guaranteed_l1),
            "guaranteed_linf": opt(self.guaranteed_linf),
            "params": {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "checks": self.checks(),
        }


def _completion(v: SimpleGame, w: Sequence[Fraction]) -> Optional[Fraction]:
    """Midpoint quota completing ``w`` to a representation of ``v``, if one exists."""
    iv = quota_interval(v, w)
    return None if iv.degenerate else iv.midpoint


# ---------------------------------------------------------------------------
# the games


def make_vkst(k: int, s: int, t: int) -> tuple[SimpleGame, WeightedRepresentation]:
    """``v_{k,s,t}`` and its integer representation ``(k; 1,...,1, 0,...,0)``."""
    if not (isinstance(k, int) and isinstance(s, int) and isinstance(t, int)):
        raise BadParameters("k, s and t must be integers")
    if not 1 <= k <= s or t < 0:
        raise BadParameters(f"need 1 <= k <= s and t >= 0, got k={k}, s={s}, t={t}")
    if s + t > MAX_PLAYERS:
        raise BadParameters(f"s + t = {s + t} exceeds {MAX_PLAYERS} players")
    rep = WeightedRepresentation.of(k, [1] * s + [0] * t)
    return realize(rep), rep


# ---------------------------------------------------------------------------
# far-apart points of W(v_{k,s,t})


def lemma31_witness(k: int, s: int, t: int, variant: str = "l1") -> ConstructionWitness:
    """Two points of ``W(v_{k,s,t})``, ``k < s``, that are permutations of each other.

    ``variant="l1"`` splits the first ``s`` players into a heavy half,
    an optional middle player and a light half (``1/s +- gamma``) and mirrors
    the order; ``variant="linf"`` only swaps the first two weights with
    ``gamma = 1/(2s)``.
    """
    if k == s:
        raise BadParameters("k = s is covered by lemma32_witness")
    game, _ = make_vkst(k, s, t)
    if variant == "l1":
        if 2 * k <= s + 1:
            gamma = Fraction(1, s * (2 * k - 1))
        else:
            gamma = Fraction(1, s * (2 * s + 3 - 2 * k))
        half = s // 2
        w = [Fraction(1, s) + gamma] * half + [Fraction(1, s)] * (s % 2) + [Fraction(1, s) - gamma] * half
        w_bar = w[::-1]
        g_l1 = max(Fraction(1, 10 * k), Fraction(1, 10 * (s - k)))
        g_inf = None
    elif variant == "linf":
        gamma = Fraction(1, 2 * s)
        w = [Fraction(1, s) + gamma, Fraction(1, s) - gamma] + [Fraction(1, s)] * (s - 2)
        w_bar = [w[1], w[0]] + w[2:]
        g_l1 = None
        g_inf = Fraction(1, s)
    else:
        raise BadParameters(f"variant must be 'l1' or 'linf', not {variant!r}")
    w = tuple(w) + (Fraction(0),) * t
    w_bar = tuple(w_bar) + (Fraction(0),) * t
    return ConstructionWitness(
        kind=f"lemma31_{variant}",
        game=game,
        w_a=w,
        w_b=w_bar,
        q_a=_completion(game, w),
        q_b=_completion(game, w_bar),
        guaranteed_l1=g_l1,
        guaranteed_linf=g_inf,
        params={"k": k, "s": s, "t": t, "gamma": gamma, "variant": variant},
    )


def lemma32_witness(s: int, t: int) -> ConstructionWitness:
    """Two far-apart points of ``W(v_{s,s,t})`` (unanimity of the first ``s`` players)."""
    if s < 1 or t < 0 or s + t < 2:
        raise BadParameters(f"need s >= 1, t >= 0 and s + t >= 2, got s={s}, t={t}")
    game, _ = make_vkst(s, s, t)
    zeros = (Fraction(0),) * t
    params: dict = {"s": s, "t": t}
    if s >= 2:
        eps = Fraction(1, 3 * s)
        head = [1 - (s - 1) * eps] + [eps] * (s - 1)
        w = tuple(head) + zeros
        w_bar = tuple(head[::-1]) + zeros
        params["epsilon"] = eps
    else:
        w = (Fraction(1),) + zeros
        w_bar = (Fraction(2, 3), Fraction(1, 3)) + zeros[1:]
    return ConstructionWitness(
        kind="lemma32",
        game=game,
        w_a=w,
        w_b=w_bar,
        q_a=_completion(game, w),
        q_b=_completion(game, w_bar),
        guaranteed_l1=Fraction(2, 3),
        guaranteed_linf=Fraction(1, 3),
        params=params,
    )


# ---------------------------------------------------------------------------
# two representations of one game, given q or Delta


def lemma33_witness(q: RationalLike, n: int) -> ConstructionWitness:
    """Two representations with the same quota ``q`` and weights ``(2/3, 1/3, 0, ...)`` versus a partner."""
    q = as_fraction(q)
    if not 0 < q <= 1:
        raise OutOfRange(f"quota {q} is not in (0, 1]")
    if n < 2:
        raise OutOfRange("need at least two players")
    zeros = (Fraction(0),) * (n - 2)
    w = (Fraction(2, 3), Fraction(1, 3)) + zeros
    if Fraction(1, 3) < q <= Fraction(2, 3):
        w_bar = (Fraction(1), Fraction(0)) + zeros
    else:
        w_bar = (Fraction(1, 3), Fraction(2, 3)) + zeros
    return ConstructionWitness(
        kind="lemma33",
        game=realize(WeightedRepresentation(q, w)),
        w_a=w,
        w_b=w_bar,
        q_a=q,
        q_b=q,
        guaranteed_l1=Fraction(2, 3),
        guaranteed_linf=Fraction(1, 3),
        params={"q": q, "n": n},
    )


def _farther(w: Sequence[Fraction], pair: ConstructionWitness, dist) -> tuple[Fraction, ...]:
    """The endpoint of ``pair`` farther from ``w``; ``w_a`` on ties."""
    return pair.w_a if dist(w, pair.w_a) >= dist(w, pair.w_b) else pair.w_b


def lemma34_witness(delta: RationalLike, n: int) -> ConstructionWitness:
    """Representations ``(q; w)`` with ``Delta(w) = delta`` and a partner at L-infinity distance at least 1/7."""
    delta = as_fraction(delta)
    if not 0 < delta <= 1:
        raise BadParameters(f"maximum weight {delta} is not in (0, 1]")
    if n < 1 / delta + 1:
        raise BadParameters(f"need n >= 1/delta + 1 = {1 / delta + 1}, got {n}")
    s = math.floor(1 / delta)
    t = n - s
    w = (delta,) * s + (1 - s * delta,) + (Fraction(0),) * (t - 1)
    q = s * delta
    game, _ = make_vkst(s, s, t)
    far = _farther(w, lemma32_witness(s, t), linf_distance)
    anchor, _ = representable_point(game)
    budget = Fraction(1, 6) - Fraction(1, 7)
    w_bar, q_bar = perturb_toward(far, anchor, game, budget)
    return ConstructionWitness(
        kind="lemma34",
        game=game,
        w_a=w,
        w_b=w_bar,
        q_a=q,
        q_b=q_bar,
        guaranteed_l1=Fraction(2, 7),
        guaranteed_linf=Fraction(1, 7),
        params={"delta": delta, "n": n, "s": s, "t": t, "budget": budget},
        max_weight=delta,
    )


def lemma35_witness(delta: RationalLike, n: int) -> ConstructionWitness:
    """Two representations with a common quota and ``Delta(w) = Delta(w_bar) = delta``.

    For ``delta >= 2/3`` the game has two passers. Below that there are
    ``2a`` passers with ``a = floor(2/(3 delta))``, weights alternating
    ``delta, delta/2`` and swapped pairwise in the partner, plus three
    residual weights ``1/3 - a delta/2`` on the odd positions after the
    passers in ``w`` and on the even positions in the partner. The
    residual players are meant to be null; the witness checks whether
    they are.
    """
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise OutOfRange(f"maximum weight {delta} is not in (0, 1)")
    if n < Fraction(4, 3) / delta + 6:
        raise OutOfRange(f"need n >= 4/(3 delta) + 6 = {Fraction(4, 3) / delta + 6}, got {n}")
    if delta >= Fraction(2, 3):
        q = 1 - delta
        rest = (Fraction(0),) * (n - 2)
        w = (delta, 1 - delta) + rest
        w_bar = (1 - delta, delta) + rest
        passers = 2
        params: dict = {"delta": delta, "n": n, "q": q}
    else:
        a = math.floor(Fraction(2, 3) / delta)
        q = delta / 2
        rho = Fraction(1, 3) - a * delta / 2
        w_list = [Fraction(0)] * n
        wb_list = [Fraction(0)] * n
        for i in range(a):
            w_list[2 * i], w_list[2 * i + 1] = delta, delta / 2
            wb_list[2 * i], wb_list[2 * i + 1] = delta / 2, delta
        for j in (0, 2, 4):
            w_list[2 * a + j] = rho
            wb_list[2 * a + j + 1] = rho
        w, w_bar = tuple(w_list), tuple(wb_list)
        passers = 2 * a
        params = {"delta": delta, "n": n, "q": q, "a": a, "residual": rho}
    # the intended game: the passers win alone, everyone else is null
    game = SimpleGame.from_minimal_winning(n, [[i] for i in range(1, passers + 1)])
    return ConstructionWitness(
        kind="lemma35",
        game=game,
        w_a=w,
        w_b=w_bar,
        q_a=q,
        q_b=q,
        guaranteed_l1=Fraction(2, 3),
        guaranteed_linf=delta / 2,
        params=params,
        max_weight=delta,
        max_weight_both=True,
    )


def lemma36_witness(q: RationalLike, delta: RationalLike, n: int, variant: str = "l1") -> ConstructionWitness:
    """Representation ``(q; w)`` with ``Delta(w) = delta`` and a far partner of the same game.

    The partner is the endpoint of a far pair of ``W(v_{k,s,n-s})`` farther
    from ``w``, moved into the interior toward a maximally separated point.
    ``variant="l1"`` guarantees ``min{2, 4 delta/min{q, 1-q}} / 200`` in L1,
    ``variant="linf"`` guarantees ``delta/5`` in L-infinity.
    """
    q, delta = as_fraction(q), as_fraction(delta)
    if not 0 < q < 1:
        raise OutOfRange(f"quota {q} is not in (0, 1)")
    if not 0 < delta <= 1:
        raise OutOfRange(f"maximum weight {delta} is not in (0, 1]")
    if n < 1 / delta + 2:
        raise OutOfRange(f"need n >= 1/delta + 2 = {1 / delta + 2}, got {n}")
    if variant not in ("l1", "linf"):
        raise OutOfRange(f"variant must be 'l1' or 'linf', not {variant!r}")
    a = math.floor(1 / delta)
    b = math.ceil(q / delta) - 1  # b delta < q <= (b + 1) delta
    k = b + 1
    w = (delta,) * a + (1 - a * delta,) + (Fraction(0),) * (n - a - 1)
    s = a if b * delta + (1 - a * delta) < q else a + 1
    game, _ = make_vkst(k, s, n - s)
    basic, _ = thm43_envelope(q, delta)
    if variant == "l1":
        pair = lemma32_witness(s, n - s) if k == s else lemma31_witness(k, s, n - s, "l1")
        far = _farther(w, pair, l1_distance)
        budget = (Fraction(1, 160) - Fraction(1, 200)) * basic
        g_l1, g_inf = basic / 200, None
    else:
        pair = lemma32_witness(s, n - s) if k == s else lemma31_witness(k, s, n - s, "linf")
        far = _farther(w, pair, linf_distance)
        budget = delta / 4 - delta / 5
        g_l1, g_inf = None, delta / 5
    anchor, _ = representable_point(game)
    w_bar, q_bar = perturb_toward(far, anchor, game, budget)
    return ConstructionWitness(
        kind=f"lemma36_{variant}",
        game=game,
        w_a=w,
        w_b=w_bar,
        q_a=q,
        q_b=q_bar,
        guaranteed_l1=g_l1,
        guaranteed_linf=g_inf,
        params={"q": q, "delta": delta, "n": n, "a": a, "b": b, "k": k, "s": s, "budget": budget, "variant": variant},
        max_weight=delta,
    )
