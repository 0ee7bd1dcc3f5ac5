"""Exact rational linear programming.

A two-phase revised simplex method over exact rationals with Bland's
smallest-index pivoting rule, so every run terminates and is deterministic.
Internally the arithmetic runs on ``gmpy2.mpq``; inputs and outputs are
``fractions.Fraction``.

Programs are stated as ``maximize c.x`` subject to rows ``a.x (<=|>=|==) b``
and per-variable lower bounds (``None`` marks a free variable). Tall
programs, with many more rows than variables, are solved through their dual
so the basis stays as small as the variable count; the primal point is then
read off the optimal simplex multipliers.
"""

from __future__ import annotations

import enum
import math
from collections import OrderedDict
from functools import reduce
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpq, mpz

from .rational import as_fraction

__all__ = [
    "MalformedProgram",
    "Relation",
    "Constraint",
    "LinearProgram",
    "Status",
    "LPOutcome",
    "solve",
    "feasibility",
    "check_outcome",
    "WarmStartMaximizer",
]

_ZERO = mpq(0)
_ONE = mpq(1)


class MalformedProgram(ValueError):
    """Dimension mismatch or otherwise ill-formed program data."""


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(as_fraction(a) for a in self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", as_fraction(self.rhs))

    def residual(self, x: Sequence[Fraction]) -> Fraction:
        """Slack of the row at ``x``; non-negative (zero for ``==``) when satisfied."""
        lhs = sum((a * xi for a, xi in zip(self.coeffs, x) if a), Fraction(0))
        if self.relation is Relation.GE:
            return lhs - self.rhs
        return self.rhs - lhs

    def satisfied(self, x: Sequence[Fraction]) -> bool:
        r = self.residual(x)
        return r == 0 if self.relation is Relation.EQ else r >= 0


@dataclass(frozen=True)
class LinearProgram:
    """``maximize objective.x`` subject to ``constraints`` and lower bounds.

    ``lower_bounds`` defaults to all zeros; an entry of ``None`` leaves that
    variable free.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...] = ()
    lower_bounds: Optional[tuple[Optional[Fraction], ...]] = None

    def __post_init__(self) -> None:
        obj = tuple(as_fraction(c) for c in self.objective)
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        n = len(obj)
        for k, row in enumerate(self.constraints):
            if not isinstance(row, Constraint):
                raise MalformedProgram(f"row {k} is not a Constraint")
            if len(row.coeffs) != n:
                raise MalformedProgram(f"row {k} has {len(row.coeffs)} coefficients, expected {n}")
        if self.lower_bounds is None:
            lbs: tuple[Optional[Fraction], ...] = (Fraction(0),) * n
        else:
            lbs = tuple(None if lb is None else as_fraction(lb) for lb in self.lower_bounds)
            if len(lbs) != n:
                raise MalformedProgram(f"{len(lbs)} lower bounds for {n} variables")
        object.__setattr__(self, "lower_bounds", lbs)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars:
            return False
        for xi, lb in zip(x, self.lower_bounds):
            if lb is not None and xi < lb:
                return False
        return all(row.satisfied(x) for row in self.constraints)


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPOutcome:
    status: Status
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None
    # one multiplier per constraint row: >= 0 on <= rows, <= 0 on >= rows
    duals: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


# ---------------------------------------------------------------------------
# standard-form core


class _Unbounded(Exception):
    pass


_LIMIT = 2**62


def _lcm_den(values) -> int:
    return int(reduce(gmpy2.lcm, (v.denominator for v in values), mpz(1)))


class _StandardForm:
    """``max c.x`` over sparse rows ``a_i.x (rel_i) b_i`` with ``x >= 0`` or free.

    The row structure is fixed at construction; objective and right-hand
    sides are supplied per :meth:`solve` call, so repeated solves over the
    same rows skip all setup. Free variables are split as ``x+ - x-``.
    Rows with a negative right-hand side are negated for the call, which the
    pricing step absorbs by flipping the matching multipliers.
    """

    def __init__(self, rows: list[dict[int, mpq]], rels: list[Relation], nvars: int, free: Sequence[bool]):
        self.m = len(rows)
        self.nvars = nvars
        self.rels = list(rels)
        self.owner: list[tuple[int, int]] = []
        first = []
        for j in range(nvars):
            first.append(len(self.owner))
            self.owner.append((j, 1))
            if free[j]:
                self.owner.append((j, -1))
        self.cols: list[dict[int, mpq]] = [{} for _ in self.owner]
        for i, coeffs in enumerate(rows):
            for j, a in coeffs.items():
                if a:
                    self.cols[first[j]][i] = a
                    if free[j]:
                        self.cols[first[j] + 1][i] = -a
        self.nstruct = len(self.cols)
        self.matrix = None
        self.matrix_obj = None
        if self.nstruct and self.m and all(a.denominator == 1 for col in self.cols for a in col.values()):
            mat = np.zeros((self.nstruct, self.m), dtype=object)
            for j, col in enumerate(self.cols):
                for i, a in col.items():
                    mat[j, i] = int(a)
            self.row_l1 = max(sum(abs(int(a)) for a in col.values()) for col in self.cols)
            self.matrix_obj = mat
            self.matrix = mat.astype(np.int64) if self.row_l1 < 2**31 else None

    def solve(self, objective: list[mpq], rhs: list[mpq], phase_one_only: bool = False) -> "_Result":
        return _Run(self, objective, rhs).solve(phase_one_only)


class _Run:
    """One simplex run over a prepared standard form.

    Keeps an explicit basis inverse; the initial basis consists of slack and
    artificial columns and is therefore the identity.
    """

    def __init__(self, sf: _StandardForm, objective: list[mpq], rhs: list[mpq]):
        self.sf = sf
        m = sf.m
        self.m = m
        self.signs = [-1 if r < 0 else 1 for r in rhs]
        self.xb = [abs(r) for r in rhs]
        rels = []
        for rel, sg in zip(sf.rels, self.signs):
            if sg < 0 and rel is not Relation.EQ:
                rel = Relation.GE if rel is Relation.LE else Relation.LE
            rels.append(rel)
        # auxiliary columns, stored already in their final (per-call) form
        self.aux: list[dict[int, mpq]] = []
        self.basis = [-1] * m
        for i, rel in enumerate(rels):
            if rel is Relation.EQ:
                continue
            self.aux.append({i: _ONE if rel is Relation.LE else -_ONE})
            if rel is Relation.LE:
                self.basis[i] = sf.nstruct + len(self.aux) - 1
        self.artificials = []
        for i in range(m):
            if self.basis[i] < 0:
                self.aux.append({i: _ONE})
                self.basis[i] = sf.nstruct + len(self.aux) - 1
                self.artificials.append(self.basis[i])
        self.ncols = sf.nstruct + len(self.aux)
        self.binv = [[_ONE if i == r else _ZERO for i in range(m)] for r in range(m)]
        self.blocked: set[int] = set()
        self.objective = objective
        self.y: list[mpq] = [_ZERO] * m

    def col(self, j: int) -> dict[int, mpq]:
        if j < self.sf.nstruct:
            return {i: (a if self.signs[i] > 0 else -a) for i, a in self.sf.cols[j].items()}
        return self.aux[j - self.sf.nstruct]

    def multipliers(self, cost: list[mpq]) -> list[mpq]:
        y = [_ZERO] * self.m
        for r, j in enumerate(self.basis):
            cj = cost[j]
            if cj:
                row = self.binv[r]
                for i in range(self.m):
                    if row[i]:
                        y[i] += cj * row[i]
        return y

    def column(self, j: int) -> list[mpq]:
        col = self.col(j)
        return [sum((row[i] * a for i, a in col.items()), _ZERO) for row in self.binv]

    def pivot(self, p: int, j: int, u: list[mpq]) -> None:
        up = u[p]
        theta = self.xb[p] / up
        if theta:
            for r in range(self.m):
                if u[r]:
                    self.xb[r] -= theta * u[r]
        self.xb[p] = theta
        prow = [v / up for v in self.binv[p]]
        self.binv[p] = prow
        nz = [i for i, v in enumerate(prow) if v]
        for r in range(self.m):
            ur = u[r]
            if r != p and ur:
                row = self.binv[r]
                for i in nz:
                    row[i] -= ur * prow[i]
        self.basis[p] = j

    def _first_improving(self, cost: list[mpq], y: list[mpq], eligible: np.ndarray) -> int:
        """Smallest-index column with positive reduced cost (Bland), or -1.

        Structural columns are priced together: with ``y = Y / D`` and
        ``c = C / E`` over integers, the sign of ``c_j - y.A_j`` is the sign
        of ``C_j D - E (A^T Y)_j``, an integer matrix-vector product done in
        int64 when the magnitudes provably fit and in Python integers
        otherwise.
        """
        sf = self.sf
        ns = sf.nstruct
        ys = [yi if sg > 0 else -yi for yi, sg in zip(y, self.signs)]
        if sf.matrix_obj is not None:
            d = _lcm_den(ys)
            scaled = [int(v * d) for v in ys]
            ymax = max((abs(v) for v in scaled), default=0)
            if sf.matrix is not None and self._cmax * d + self._cden * sf.row_l1 * ymax < _LIMIT:
                rc = self._cost_i64 * d - self._cden * (sf.matrix @ np.array(scaled, dtype=np.int64))
            else:
                rc = self._cost_obj * d - self._cden * (sf.matrix_obj @ np.array(scaled, dtype=object))
            hits = np.flatnonzero((rc > 0) & eligible[:ns])
            if hits.size:
                return int(hits[0])
        else:
            for j in np.flatnonzero(eligible[:ns]):
                rc = cost[j]
                for i, a in sf.cols[j].items():
                    rc -= ys[i] * a
                if rc > 0:
                    return int(j)
        for j in range(ns, self.ncols):
            if eligible[j]:
                rc = cost[j]
                for i, a in self.aux[j - ns].items():
                    rc -= y[i] * a
                if rc > 0:
                    return j
        return -1

    def run(self, cost: list[mpq]) -> None:
        """Maximize ``cost.x`` from the current basis; raises ``_Unbounded``."""
        ns = self.sf.nstruct
        self._cden = _lcm_den(cost[:ns])
        scaled = [int(c * self._cden) for c in cost[:ns]]
        self._cmax = max((abs(c) for c in scaled), default=0)
        self._cost_obj = np.array(scaled, dtype=object)
        self._cost_i64 = np.array(scaled, dtype=np.int64) if self._cmax < _LIMIT else None
        if self._cost_i64 is None:
            self._cmax = _LIMIT  # forces the Python-integer path
        eligible = np.ones(self.ncols, dtype=bool)
        for j in self.blocked:
            eligible[j] = False
        for j in self.basis:
            eligible[j] = False
        while True:
            y = self.multipliers(cost)
            enter = self._first_improving(cost, y, eligible)
            if enter < 0:
                self.y = y
                return
            u = self.column(enter)
            best = -1
            best_ratio = None
            for r in range(self.m):
                if u[r] > 0:
                    ratio = self.xb[r] / u[r]
                    if (
                        best < 0
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[r] < self.basis[best])
                    ):
                        best, best_ratio = r, ratio
            if best < 0:
                raise _Unbounded
            leaving = self.basis[best]
            self.pivot(best, enter, u)
            eligible[enter] = False
            if leaving not in self.blocked:
                eligible[leaving] = True

    def solve(self, phase_one_only: bool) -> "_Result":
        m = self.m
        art_set = set(self.artificials)
        if self.artificials:
            cost1 = [_ZERO] * self.ncols
            for j in self.artificials:
                cost1[j] = -_ONE
            self.run(cost1)  # bounded above by zero
            if any(self.basis[r] in art_set and self.xb[r] for r in range(m)):
                return _Result(Status.INFEASIBLE)
            # drive zero-level artificials out of the basis where possible
            for r in range(m):
                if self.basis[r] not in art_set:
                    continue
                in_basis = set(self.basis)
                binv_r = self.binv[r]
                for j in range(self.ncols):
                    if j in art_set or j in in_basis:
                        continue
                    if sum((binv_r[i] * a for i, a in self.col(j).items()), _ZERO):
                        self.pivot(r, j, self.column(j))
                        break
            self.blocked = art_set
        if phase_one_only:
            self.y = [_ZERO] * m
        else:
            cost2 = [_ZERO] * self.ncols
            for c, (j, s) in enumerate(self.sf.owner):
                cost2[c] = self.objective[j] * s
            try:
                self.run(cost2)
            except _Unbounded:
                return _Result(Status.UNBOUNDED)
        values = {j: self.xb[r] for r, j in enumerate(self.basis)}
        x = [_ZERO] * self.sf.nvars
        for c, (j, s) in enumerate(self.sf.owner):
            val = values.get(c)
            if val:
                x[j] += s * val
        duals = [self.y[i] * self.signs[i] for i in range(m)]
        return _Result(Status.OPTIMAL, x, duals)


@dataclass
class _Result:
    status: Status
    x: Optional[list[mpq]] = None
    duals: Optional[list[mpq]] = None


# ---------------------------------------------------------------------------
# preparation and routes


class _Prepared:
    """Objective-independent data for one ``(constraints, lower_bounds)`` pair."""

    def __init__(self, lp: "LinearProgram"):
        n = lp.num_vars
        self.n = n
        self.lbs = [mpq(lb) if lb is not None else _ZERO for lb in lp.lower_bounds]
        self.free = [lb is None for lb in lp.lower_bounds]
        self.rows = []
        self.rels = []
        self.rhs = []
        for row in lp.constraints:
            coeffs = {j: mpq(a) for j, a in enumerate(row.coeffs) if a}
            self.rows.append(coeffs)
            self.rels.append(row.relation)
            self.rhs.append(mpq(row.rhs) - sum((a * self.lbs[j] for j, a in coeffs.items()), _ZERO))
        self._primal: Optional[_StandardForm] = None
        self._dual: Optional[_StandardForm] = None

    @property
    def primal(self) -> _StandardForm:
        if self._primal is None:
            self._primal = _StandardForm(self.rows, self.rels, self.n, self.free)
        return self._primal

    @property
    def dual(self) -> _StandardForm:
        """Standard form of the dual program.

        For ``max c.x`` with rows ``A x (rel) b`` the dual is ``min b.y`` with
        ``A^T y >= c`` on bounded columns and ``= c`` on free ones, ``y >= 0``
        on <= rows, ``y <= 0`` on >= rows and ``y`` free on == rows. On >=
        rows the variable ``t = -y >= 0`` is used instead.
        """
        if self._dual is None:
            self.flip = [-1 if rel is Relation.GE else 1 for rel in self.rels]
            dual_rows: list[dict[int, mpq]] = [{} for _ in range(self.n)]
            for i, coeffs in enumerate(self.rows):
                for j, a in coeffs.items():
                    dual_rows[j][i] = a * self.flip[i]
            dual_rels = [Relation.EQ if f else Relation.GE for f in self.free]
            dual_free = [rel is Relation.EQ for rel in self.rels]
            self.dual_objective = [-r * f for r, f in zip(self.rhs, self.flip)]
            self._dual = _StandardForm(dual_rows, dual_rels, len(self.rows), dual_free)
        return self._dual


_PREPARED: "OrderedDict[int, tuple[object, _Prepared]]" = OrderedDict()


def _prepare(lp: "LinearProgram") -> _Prepared:
    # keyed on the identity of the constraint tuple (kept alive in the entry)
    key = (id(lp.constraints), lp.lower_bounds)
    hit = _PREPARED.get(key)
    if hit is not None and hit[0] is lp.constraints:
        _PREPARED.move_to_end(key)
        return hit[1]
    prep = _Prepared(lp)
    _PREPARED[key] = (lp.constraints, prep)
    if len(_PREPARED) > 64:
        _PREPARED.popitem(last=False)
    return prep


def _to_fraction(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _finish(lp: "LinearProgram", res: _Result, lbs: list[mpq]) -> LPOutcome:
    if res.status is not Status.OPTIMAL:
        return LPOutcome(res.status)
    point = tuple(_to_fraction(xj + lb) for xj, lb in zip(res.x, lbs))
    value = sum((c * xj for c, xj in zip(lp.objective, point) if c), Fraction(0))
    duals = tuple(_to_fraction(y) for y in res.duals)
    return LPOutcome(Status.OPTIMAL, value, point, duals)


def _solve_primal(lp: "LinearProgram", phase_one_only: bool = False) -> LPOutcome:
    prep = _prepare(lp)
    res = prep.primal.solve([mpq(c) for c in lp.objective], prep.rhs, phase_one_only)
    return _finish(lp, res, prep.lbs)


def _solve_via_dual(lp: "LinearProgram") -> Optional[LPOutcome]:
    """Solve through the dual program; ``None`` if the dual is infeasible."""
    prep = _prepare(lp)
    sf = prep.dual
    res = sf.solve(prep.dual_objective, [mpq(c) for c in lp.objective])
    if res.status is Status.INFEASIBLE:
        return None
    if res.status is Status.UNBOUNDED:
        return LPOutcome(Status.INFEASIBLE)
    # the primal point is the negated multiplier vector of the dual rows
    primal = _Result(Status.OPTIMAL, [-p for p in res.duals], [y * f for y, f in zip(res.x, prep.flip)])
    return _finish(lp, primal, prep.lbs)


def solve(lp: LinearProgram, method: str = "auto") -> LPOutcome:
    """Maximize ``lp`` exactly.

    ``method`` is ``"primal"``, ``"dual"`` or ``"auto"``; auto picks the dual
    route when rows outnumber variables by more than two to one. Whatever the
    route, an optimal outcome carries a basic point satisfying every row
    exactly and ``objective.point == value``.
    """
    if not isinstance(lp, LinearProgram):
        raise MalformedProgram("expected a LinearProgram")
    if method not in ("auto", "primal", "dual"):
        raise ValueError(f"unknown method {method!r}")
    use_dual = method == "dual" or (method == "auto" and len(lp.constraints) > 2 * max(lp.num_vars, 1))
    if use_dual:
        out = _solve_via_dual(lp)
        if out is not None:
            return out
    return _solve_primal(lp)


def feasibility(lp: LinearProgram, method: str = "auto") -> Optional[tuple[Fraction, ...]]:
    """Return some exact feasible point of ``lp``, or ``None`` if there is none."""
    zero = LinearProgram((Fraction(0),) * lp.num_vars, lp.constraints, lp.lower_bounds)
    if method == "primal" or (method == "auto" and len(lp.constraints) <= 2 * max(lp.num_vars, 1)):
        out = _solve_primal(zero, phase_one_only=True)
    else:
        out = solve(zero, method="dual")
    return out.point if out.optimal else None


def check_outcome(lp: LinearProgram, out: LPOutcome) -> bool:
    """Post-hoc certificate check of an optimal outcome.

    Verifies primal feasibility by substitution, dual sign conditions, dual
    feasibility of every column and a zero duality gap, all exactly.
    """
    if not out.optimal:
        return True
    x = out.point
    if not lp.is_feasible_point(x):
        return False
    if sum((c * xi for c, xi in zip(lp.objective, x)), Fraction(0)) != out.value:
        return False
    y = out.duals
    for row, yi in zip(lp.constraints, y):
        if row.relation is Relation.LE and yi < 0:
            return False
        if row.relation is Relation.GE and yi > 0:
            return False
    gap = out.value
    for i, row in enumerate(lp.constraints):
        gap -= row.rhs * y[i]
    for j in range(lp.num_vars):
        reduced = lp.objective[j] - sum((row.coeffs[j] * y[i] for i, row in enumerate(lp.constraints)), Fraction(0))
        lb = lp.lower_bounds[j]
        if lb is None:
            if reduced != 0:
                return False
        else:
            if reduced > 0:
                return False
            gap -= reduced * lb
    return gap == 0


# ---------------------------------------------------------------------------
# warm-started re-optimisation over a fixed feasible region


def _int_rows(lp: LinearProgram) -> tuple[list[list[int]], list[int], list[bool]]:
    """Every row and lower bound as ``a.x >= b`` (or ``==``) with integer data."""
    rows, rhs, eq = [], [], []
    for row in lp.constraints:
        sign = -1 if row.relation is Relation.LE else 1
        den = _lcm_den([mpq(a) for a in row.coeffs] + [mpq(row.rhs)])
        rows.append([int(sign * a * den) for a in row.coeffs])
        rhs.append(int(sign * row.rhs * den))
        eq.append(row.relation is Relation.EQ)
    n = lp.num_vars
    for j, lb in enumerate(lp.lower_bounds):
        if lb is not None:
            rows.append([1 if i == j else 0 for i in range(n)])
            rhs.append(lb)  # Fraction; scaled below
            eq.append(False)
    for k, b in enumerate(rhs):
        if isinstance(b, Fraction) and b.denominator != 1:
            rows[k] = [a * b.denominator for a in rows[k]]
            rhs[k] = b.numerator
        else:
            rhs[k] = int(b)
    return rows, rhs, eq


def _matvec(a64: Optional[np.ndarray], a_obj: np.ndarray, row_l1: int, vec, af: Optional[np.ndarray] = None) -> np.ndarray:
    """Exact integer ``A @ vec``.

    When every partial sum is an integer below ``2**53`` the product is
    formed in double precision (``af``), where such integers and their sums
    are represented exactly; otherwise int64 when it provably fits, and
    Python integers as the last resort.
    """
    if isinstance(vec, np.ndarray) and vec.dtype == np.int64:
        v64 = vec
        top = int(np.abs(vec).max(initial=0))
    else:
        ints = [int(v) for v in vec]
        top = max((abs(v) for v in ints), default=0)
        v64 = np.array(ints, dtype=np.int64) if top < _LIMIT else None
    bound = top * row_l1
    if af is not None and bound < 2**53:
        return (af @ v64.astype(np.float64)).astype(np.int64)
    if a64 is not None and bound < _LIMIT:
        return a64 @ v64
    return a_obj @ np.array([int(v) for v in vec], dtype=object)


def _bareiss_det(mat: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class WarmStartMaximizer:
    """Repeated ``max c.x`` over one fixed, pointed feasible region.

    Keeps the optimal vertex of the previous call as an active set of ``n``
    linearly independent tight rows and re-optimises from it with the
    active-set form of the simplex method: multipliers ``mu`` solve
    ``B^T mu = c``; while some inequality row has ``mu_k > 0`` the vertex
    moves along the edge that releases that row, and the first row to become
    tight (smallest index on ties) takes its place.

    The entering row is the one with the largest multiplier; at a degenerate
    vertex the leaving row is the tight row most opposed to the edge. After
    ``STALL_LIMIT`` consecutive zero-length steps both choices switch to
    smallest row index until the vertex moves again. Bland's rule therefore
    governs every long degenerate stretch, which rules out cycling, and
    every non-degenerate step strictly increases the objective.

    The basis inverse is held fraction-free as ``adj / det`` with the integer
    adjugate updated by exact division, so all arithmetic is on integers.

    The first call goes through :func:`solve` and adopts the vertex it
    returns. Results carry multipliers in the conventions of
    :class:`LPOutcome` and pass :func:`check_outcome`.
    """

    STALL_LIMIT = 50

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.n = lp.num_vars
        rows, rhs, eq = _int_rows(lp)
        self.m_rows = len(lp.constraints)
        self.eq = np.array(eq, dtype=bool)
        self.rows = rows
        self.row_scale = []
        for row in lp.constraints:
            sign = -1 if row.relation is Relation.LE else 1
            self.row_scale.append(sign * _lcm_den([mpq(a) for a in row.coeffs] + [mpq(row.rhs)]))
        self.rhs = rhs
        self.rhs_obj = np.array(rhs, dtype=object)
        self.a_obj = np.array(rows, dtype=object).reshape(len(rows), self.n)
        self.row_l1 = max((sum(abs(a) for a in r) for r in rows), default=0)
        fits = max((max((abs(a) for a in r), default=0) for r in rows), default=0) < 2**31
        self.a64 = self.a_obj.astype(np.int64) if fits else None
        self.af = self.a64.astype(np.float64) if fits else None
        self.rhs_max = max((abs(b) for b in rhs), default=0)
        self.basis: Optional[list[int]] = None
        self.adj: Optional[np.ndarray] = None  # object array, B^-1 = adj / det
        self.det = 0
        self._slack: Optional[np.ndarray] = None
        self.rhs64 = np.array(rhs, dtype=np.int64) if self.rhs_max < 2**62 else None
        self.pivots = 0
        self.degenerate = 0

    # -- state -------------------------------------------------------------

    def _set_basis(self, basis: list[int]) -> bool:
        mat = [self.rows[i] for i in basis]
        det = _bareiss_det(mat)
        if det == 0:
            return False
        inv = _inverse([[mpq(a) for a in row] for row in mat])
        adj = np.array([[int(v * det) for v in row] for row in inv], dtype=object)
        self.adj = adj.astype(np.int64) if max(abs(int(v)) for v in adj.flat) < 2**31 else adj
        self.det = det
        self.basis = list(basis)
        self._slack = None
        return True

    def _point_numerators(self) -> np.ndarray:
        """``X`` with ``x = X / det``."""
        return self.adj.astype(object) @ np.array([self.rhs[i] for i in self.basis], dtype=object)

    def _scaled_slacks(self, X: np.ndarray) -> np.ndarray:
        """``|det| * (a_i.x - b_i)`` for every row; non-negative when feasible."""
        ax = _matvec(self.a64, self.a_obj, self.row_l1, X, self.af)
        sd = 1 if self.det > 0 else -1
        if ax.dtype == np.int64 and abs(self.det) * self.rhs_max < 2**61 and int(np.abs(ax).max(initial=0)) < 2**61:
            return (ax - self.rhs64 * self.det) * sd
        return (ax.astype(object) - self.rhs_obj * self.det) * sd

    def _adopt(self, point: Sequence[Fraction]) -> bool:
        """Pick ``n`` independent tight rows at ``point``, equality rows first."""
        x = [mpq(v) for v in point]
        den = _lcm_den(x)
        ax = _matvec(self.a64, self.a_obj, self.row_l1, [v * den for v in x])
        slack = ax.astype(object) - self.rhs_obj * den
        if any(slack[i] != 0 for i in np.flatnonzero(self.eq)) or any(v < 0 for v in slack):
            return False
        tight = [int(i) for i in np.flatnonzero(slack == 0)]
        order = [i for i in tight if self.eq[i]] + [i for i in tight if not self.eq[i]]
        basis: list[int] = []
        reduced: list[tuple[int, list[mpq]]] = []  # (pivot column, echelon row)
        for i in order:
            r = [mpq(a) for a in self.rows[i]]
            for col, er in reduced:
                if r[col]:
                    f = r[col] / er[col]
                    r = [a - f * b for a, b in zip(r, er)]
            piv = next((j for j, a in enumerate(r) if a), None)
            if piv is None:
                continue
            reduced.append((piv, r))
            basis.append(i)
            if len(basis) == self.n:
                break
        return len(basis) == self.n and self._set_basis(basis)

    def _outcome(self, mu_num: np.ndarray, scale: int, with_duals: bool) -> LPOutcome:
        """Package the current vertex; ``mu = mu_num / scale``."""
        X = self._point_numerators()
        point = tuple(Fraction(int(v), self.det) for v in X)
        value = sum((cj * xj for cj, xj in zip(self.lp_objective, point) if cj), Fraction(0))
        if not with_duals:
            return LPOutcome(Status.OPTIMAL, value, point)
        duals = [Fraction(0)] * self.m_rows
        for k, i in enumerate(self.basis):
            if i < self.m_rows:
                duals[i] = Fraction(int(mu_num[k]) * self.row_scale[i], scale)
        return LPOutcome(Status.OPTIMAL, value, point, tuple(duals))

    # -- main entry --------------------------------------------------------

    def maximize(self, objective: Sequence, with_duals: bool = True) -> LPOutcome:
        """``max objective.x``; ``with_duals=False`` skips assembling row multipliers."""
        c = [as_fraction(v) for v in objective]
        if len(c) != self.n:
            raise MalformedProgram(f"objective has {len(c)} entries, expected {self.n}")
        self.lp_objective = tuple(c)
        if self.basis is None:
            cold = solve(LinearProgram(self.lp_objective, self.lp.constraints, self.lp.lower_bounds))
            if not cold.optimal or not self._adopt(cold.point):
                return cold
        cden = math.lcm(*(v.denominator for v in c))
        c_int = np.array([int(v * cden) for v in c], dtype=object)
        c_l1 = sum(abs(int(v)) for v in c_int)
        c_small = c_l1 < 2**31
        c64 = c_int.astype(np.int64) if c_small else None
        n = self.n
        eq_basis = self.eq
        stall = 0
        while True:
            sd = 1 if self.det > 0 else -1
            if c_small and self.adj.dtype == np.int64:
                mu_num = (c64 @ self.adj) * sd  # mu = mu_num / (|det| * cden)
            else:
                mu_num = (c_int @ self.adj.astype(object)) * sd
            eligible = [k for k in range(n) if mu_num[k] > 0 and not eq_basis[self.basis[k]]]
            if not eligible:
                return self._outcome(mu_num, abs(self.det) * cden, with_duals)
            if stall < self.STALL_LIMIT:
                enter = max(eligible, key=lambda k: (mu_num[k], -self.basis[k]))
            else:
                enter = min(eligible, key=lambda k: self.basis[k])
            # edge direction d = adj[:, enter] / det; rows with a_i.d < 0 can block
            g = _matvec(self.a64, self.a_obj, self.row_l1, self.adj[:, enter], self.af) * (-sd)
            g[self.basis] = 0
            cand = np.flatnonzero(g > 0)
            if cand.size == 0:
                return LPOutcome(Status.UNBOUNDED)
            if self._slack is None:
                # positive rescaling by a later |det| leaves zero tests and ratio order intact
                self._slack = self._scaled_slacks(self._point_numerators())
            slack = self._slack
            zero = cand[slack[cand] == 0]
            if zero.size:
                if stall < self.STALL_LIMIT:
                    # the tight row most opposed to the edge; first such row on ties
                    leave = int(zero[np.argmax(g[zero])])
                else:
                    leave = int(zero[0])
                self.degenerate += 1
                stall += 1
            else:
                leave = _min_ratio(slack, g, cand)
                stall = 0
                self._slack = None
            self._pivot(enter, leave)
            self.pivots += 1

    def _pivot(self, k: int, leave: int) -> None:
        """Swap row ``leave`` into position ``k``; ``adj' = (adj*pk - col_k alpha) / det``."""
        adj = self.adj
        top = int(np.abs(adj).max())
        if adj.dtype == np.int64 and top * self.row_l1 < 2**31:
            alpha = self.a64[leave] @ adj
            if int(np.abs(alpha).max()) < 2**31:
                pk = int(alpha[k])
                new = (adj * pk - np.outer(adj[:, k], alpha)) // self.det
                new[:, k] = adj[:, k]
                self._store(new, pk, k, leave)
                return
        adj = adj.astype(object)
        alpha = self.a_obj[leave] @ adj
        pk = int(alpha[k])
        col = adj[:, k].copy()
        new = (adj * pk - np.outer(col, alpha)) // self.det
        new[:, k] = col
        self._store(new, pk, k, leave)

    def _store(self, adj: np.ndarray, det: int, k: int, leave: int) -> None:
        if adj.dtype == object and max(abs(int(v)) for v in adj.flat) < 2**31:
            adj = adj.astype(np.int64)
        self.adj = adj
        self.det = det
        self.basis[k] = leave


def _min_ratio(slack: np.ndarray, g: np.ndarray, cand: np.ndarray) -> int:
    """Row minimising ``slack_i / g_i`` over ``cand`` (all ``g_i > 0``), smallest index on ties.

    Float ratios only prefilter; survivors are compared exactly.
    """
    keep = cand
    if cand.size > 8:
        try:
            ratios = slack[cand].astype(np.float64) / g[cand].astype(np.float64)
            if np.all(np.isfinite(ratios)):
                keep = cand[ratios <= ratios.min() * (1 + 1e-9)]
        except OverflowError:
            pass
    best = None
    for i in keep:
        i = int(i)
        num, den = int(slack[i]), int(g[i])
        if best is None or num * best[2] < best[1] * den or (num * best[2] == best[1] * den and i < best[0]):
            best = (i, num, den)
    return best[0]


def _inverse(mat: list[list[mpq]]) -> list[list[mpq]]:
    """Exact Gauss-Jordan inverse of a non-singular square matrix."""
    n = len(mat)
    aug = [list(row) + [_ONE if i == j else _ZERO for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
