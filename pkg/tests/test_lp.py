from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightpoly.games import WeightedRepresentation, realize
from weightpoly.lp import (
    Constraint,
    LinearProgram,
    MalformedProgram,
    Relation,
    Status,
    WarmStartMaximizer,
    check_outcome,
    feasibility,
    solve,
)
from weightpoly.polytope import build_polytope

LE, GE, EQ = Relation.LE, Relation.GE, Relation.EQ


def _c(coeffs, rel, rhs):
    return Constraint(tuple(Fraction(x) for x in coeffs), rel, Fraction(rhs))


def test_textbook_program():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    lp = LinearProgram((3, 2), (_c((1, 1), LE, 4), _c((1, 3), LE, 6), _c((1, 0), LE, 3)))
    for method in ("primal", "dual"):
        out = solve(lp, method)
        assert out.status is Status.OPTIMAL and out.value == 11 and out.point == (3, 1)
        assert check_outcome(lp, out)


def test_infeasible_and_unbounded():
    infeasible = LinearProgram((1, 0), (_c((1, 1), LE, 1), _c((1, 1), GE, 2)))
    assert solve(infeasible).status is Status.INFEASIBLE
    assert feasibility(infeasible) is None
    unbounded = LinearProgram((1, 1), (_c((1, -1), LE, 1),))
    assert solve(unbounded, "primal").status is Status.UNBOUNDED


def test_free_variables_and_equalities():
    # max -x with x free, x >= -2 written as a row, x + y == 1
    lp = LinearProgram((-1, 0), (_c((1, 0), GE, -2), _c((1, 1), EQ, 1)), (None, Fraction(0)))
    out = solve(lp, "primal")
    assert out.value == 2 and out.point == (-2, 3)
    assert check_outcome(lp, out)


def test_malformed_programs():
    with pytest.raises(MalformedProgram):
        LinearProgram((1, 2), (_c((1,), LE, 1),))
    with pytest.raises(MalformedProgram):
        LinearProgram((1,), (), (Fraction(0), Fraction(0)))


def test_degenerate_program_terminates():
    # a classic cycling example for textbook pivoting; Bland's rule ends it
    rows = (
        _c((Fraction(1, 4), -8, -1, 9), LE, 0),
        _c((Fraction(1, 2), -12, Fraction(-1, 2), 3), LE, 0),
        _c((0, 0, 1, 0), LE, 1),
    )
    lp = LinearProgram((Fraction(3, 4), -20, Fraction(1, 2), -6), rows)
    out = solve(lp, "primal")
    assert out.value == Fraction(5, 4)
    assert check_outcome(lp, out)


def _brute_force_max(obj, rows):
    """Best vertex of ``{x >= 0 : rows}`` in two or three variables, by enumeration."""
    n = len(obj)
    planes = [(r.coeffs, r.rhs) for r in rows] + [(tuple(Fraction(int(i == j)) for j in range(n)), Fraction(0)) for i in range(n)]
    best = None
    for combo in itertools.combinations(planes, n):
        m = [list(a) + [b] for a, b in combo]
        # Gauss-Jordan over Fractions
        ok = True
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                ok = False
                break
            m[col], m[piv] = m[piv], m[col]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col] / m[col][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        if not ok:
            continue
        x = tuple(m[i][n] / m[i][i] for i in range(n))
        if all(xi >= 0 for xi in x) and all(r.satisfied(x) for r in rows):
            val = sum(c * xi for c, xi in zip(obj, x))
            best = val if best is None else max(best, val)
    return best


small = st.integers(-4, 4)


@given(
    st.integers(2, 3).flatmap(
        lambda n: st.tuples(
            st.lists(small, min_size=n, max_size=n),
            st.lists(st.tuples(st.lists(small, min_size=n, max_size=n), st.integers(0, 6)), min_size=1, max_size=5),
        )
    )
)
def test_matches_vertex_enumeration_on_bounded_programs(data):
    obj, raw = data
    n = len(obj)
    rows = [_c(a, LE, b) for a, b in raw] + [_c([1] * n, LE, 10)]  # the box keeps it bounded
    lp = LinearProgram(tuple(obj), tuple(rows))
    expected = _brute_force_max([Fraction(c) for c in obj], rows)
    for method in ("primal", "dual"):
        out = solve(lp, method)
        assert out.optimal and out.value == expected
        assert check_outcome(lp, out)


@given(st.lists(st.integers(0, 9), min_size=3, max_size=6).filter(lambda w: sum(w) >= 2), st.data())
def test_warm_start_matches_cold_solves(weights, data):
    q = data.draw(st.integers(1, sum(weights)))
    v = realize(WeightedRepresentation.of(q, weights))
    P = build_polytope(v)
    n = v.n
    lp0 = LinearProgram((Fraction(0),) * (n + 1), P.lifted_constraints())
    warm = WarmStartMaximizer(lp0)
    for _ in range(4):
        c = tuple(Fraction(x) for x in data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))) + (Fraction(0),)
        lp = LinearProgram(c, P.lifted_constraints())
        w_out = warm.maximize(c)
        cold = solve(lp)
        assert w_out.optimal and cold.optimal
        assert w_out.value == cold.value
        assert check_outcome(lp, w_out) and check_outcome(lp, cold)
        # the pair-row program over w alone has the same optimum
        assert solve(P.pair_program(c[:n])).value == cold.value
