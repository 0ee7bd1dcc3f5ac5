"""Brute-force reference implementations that share no code with the package.

They work from the characteristic function alone: coalition bitmaps are
rebuilt here, vertices are found by solving every square subsystem with
Cramer's rule, and the Shapley-Shubik index is averaged over all orders.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np


def winning_table(quota: Fraction, weights: Sequence[Fraction]) -> list[bool]:
    n = len(weights)
    return [sum((weights[i] for i in range(n) if m >> i & 1), Fraction(0)) >= quota for m in range(1 << n)]


def _bits(m: int, n: int) -> list[int]:
    return [m >> i & 1 for i in range(n)]


def polytope_rows(win: Sequence[bool], n: int) -> list[tuple[int, ...]]:
    """Rows ``a`` with ``a.w >= 0`` describing ``W(v)`` besides ``sum w = 1``.

    Uses every winning/losing pair, not only minimal/maximal ones, plus the
    non-negativity rows; duplicates are dropped.
    """
    rows = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    winners = [m for m in range(1 << n) if win[m]]
    losers = [m for m in range(1 << n) if not win[m]]
    for s in winners:
        for t in losers:
            a = tuple(x - y for x, y in zip(_bits(s, n), _bits(t, n)))
            if any(a):
                rows.add(a)
    return sorted(rows)


def vertices(win: Sequence[bool], n: int) -> list[tuple[Fraction, ...]]:
    """All vertices of ``W(v)`` by exhaustive enumeration of tight subsystems.

    Determinants of the small integer matrices are computed in floating
    point and rounded: entries lie in ``{-1, 0, 1}`` and ``n <= 4``, so the
    exact determinants are integers of magnitude at most 24.
    """
    rows = polytope_rows(win, n)
    ones = np.ones(n, dtype=np.int64)
    found = set()
    for combo in itertools.combinations(range(len(rows)), n - 1):
        m = np.array([rows[i] for i in combo] + [list(ones)], dtype=np.int64)
        det = round(np.linalg.det(m))
        if det == 0:
            continue
        point = []
        for j in range(n):
            mj = m.copy()
            mj[:, j] = 0
            mj[-1, j] = 1
            point.append(Fraction(round(np.linalg.det(mj)), det))
        if all(sum(a * x for a, x in zip(r, point)) >= 0 for r in rows):
            found.add(tuple(point))
    return sorted(found)


def diameters(win: Sequence[bool], n: int) -> tuple[Fraction, Fraction]:
    """``(L1, L-infinity)`` diameters as the largest vertex-pair distances."""
    vs = vertices(win, n)
    assert vs, "empty polytope"
    l1 = max(sum(abs(a - b) for a, b in zip(u, w)) for u in vs for w in vs)
    linf = max(max(abs(a - b) for a, b in zip(u, w)) for u in vs for w in vs)
    return l1, linf


def ssi_by_permutations(win: Sequence[bool], n: int) -> tuple[Fraction, ...]:
    """Shapley-Shubik index as pivot frequencies over all ``n!`` orders."""
    pivots = [0] * n
    for order in itertools.permutations(range(n)):
        mask = 0
        for p in order:
            mask |= 1 << p
            if win[mask]:
                pivots[p] += 1
                break
    total = math.factorial(n)
    return tuple(Fraction(c, total) for c in pivots)


def banzhaf_swings(win: Sequence[bool], n: int) -> list[int]:
    return [sum(1 for m in range(1 << n) if not m >> i & 1 and win[m | 1 << i] and not win[m]) for i in range(n)]
