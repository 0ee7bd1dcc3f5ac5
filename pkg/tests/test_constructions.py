from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightpoly.bounds import thm43_envelope
from weightpoly.constructions import (
    BadParameters,
    OutOfRange,
    lemma31_witness,
    lemma32_witness,
    lemma33_witness,
    lemma34_witness,
    lemma35_witness,
    lemma36_witness,
    make_vkst,
)
from weightpoly.games import classify_players
from weightpoly.polytope import diameter_l1, diameter_linf

F = Fraction


def test_make_vkst():
    v, rep = make_vkst(3, 3, 2)
    assert [m for m in v.minimal_winning_masks] == [0b00111]
    cls = classify_players(v)
    assert cls.is_null(4) and cls.is_null(5)
    for bad in ((0, 2, 0), (3, 2, 0), (1, 2, -1), (1, 20, 5)):
        with pytest.raises(BadParameters):
            make_vkst(*bad)


def test_far_pair_examples():
    a = lemma31_witness(1, 2, 0)
    assert a.w_a == (1, 0) and a.w_b == (0, 1)
    assert a.l1_distance == 2 and a.guaranteed_l1 == F(1, 10)
    assert a.q_a is None  # on the boundary of W(v): no quota completes it
    b = lemma31_witness(2, 3, 0)
    assert b.params["gamma"] == F(1, 9)
    assert b.w_a == (F(4, 9), F(1, 3), F(2, 9)) and b.w_b == (F(2, 9), F(1, 3), F(4, 9))
    assert b.l1_distance == F(4, 9)
    c = lemma31_witness(1, 2, 3)
    assert c.w_a[2:] == (0, 0, 0) == c.w_b[2:]
    with pytest.raises(BadParameters):
        lemma31_witness(2, 2, 0)
    inf = lemma31_witness(2, 4, 1, "linf")
    assert inf.linf_distance == F(1, 4) == inf.guaranteed_linf


def test_unanimity_pair_examples():
    a = lemma32_witness(1, 1)
    assert a.w_a == (1, 0) and a.w_b == (F(2, 3), F(1, 3))
    assert (a.l1_distance, a.linf_distance) == (F(2, 3), F(1, 3))
    b = lemma32_witness(2, 0)
    assert b.params["epsilon"] == F(1, 6) and b.l1_distance == F(4, 3)
    assert lemma32_witness(3, 1).checks()["members"]
    with pytest.raises(BadParameters):
        lemma32_witness(1, 0)


@pytest.mark.parametrize(
    "q, partner",
    [(F(3, 4), (F(1, 3), F(2, 3))), (F(1, 2), (1, 0)), (F(1, 4), (F(1, 3), F(2, 3)))],
)
def test_quota_construction(q, partner):
    wit = lemma33_witness(q, 4)
    assert wit.w_b[:2] == partner and wit.verified


def test_quota_construction_games():
    assert [m for m in lemma33_witness(F(3, 4), 3).game.minimal_winning_masks] == [0b011]
    assert [m for m in lemma33_witness(F(1, 2), 3).game.minimal_winning_masks] == [0b001]
    assert [m for m in lemma33_witness(F(1, 4), 3).game.minimal_winning_masks] == [0b001, 0b010]
    with pytest.raises(OutOfRange):
        lemma33_witness(0, 3)


def test_max_weight_construction_examples():
    a = lemma34_witness(F(1, 2), 3)
    assert a.params["s"] == 2 and a.w_a == (F(1, 2), F(1, 2), 0) and a.q_a == 1
    b = lemma34_witness(F(2, 5), 4)
    assert b.w_a == (F(2, 5), F(2, 5), F(1, 5), 0) and b.q_a == F(4, 5)
    for wit in (a, b):
        assert wit.verified and wit.linf_distance >= F(1, 7)
    with pytest.raises(BadParameters):
        lemma34_witness(F(1, 2), 2)


def test_two_passer_examples():
    a = lemma35_witness(F(3, 4), 8)
    assert a.w_a[:2] == (F(3, 4), F(1, 4)) and a.w_b[:2] == (F(1, 4), F(3, 4))
    assert a.l1_distance == 1 and a.verified
    b = lemma35_witness(F(1, 3), 10)
    assert b.params["a"] == 2 and b.q_a == F(1, 6) and b.params["residual"] == 0
    assert b.w_a[:4] == (F(1, 3), F(1, 6), F(1, 3), F(1, 6)) and b.verified
    with pytest.raises(OutOfRange):
        lemma35_witness(F(3, 4), 4)  # needs n >= 70/9


@pytest.mark.parametrize("j", range(1, 21))
def test_two_passer_residuals_are_null_exactly_when_their_sum_stays_below_quota(j):
    # three residual weights sum to (3 Delta/2) frac(2/(3 Delta)); they stay null iff that is below q = Delta/2
    delta = F(j + 1, 22)
    wit = lemma35_witness(delta, math.ceil(F(4, 3) / delta + 6))
    x = F(2, 3) / delta
    works = delta >= F(2, 3) or x - math.floor(x) < F(1, 3)
    assert wit.verified == works
    checks = wit.checks()
    assert checks["l1_guarantee"] and checks["linf_guarantee"] and checks["max_weight"]


def test_q_and_delta_construction_examples():
    a = lemma36_witness(F(1, 2), F(1, 4), 6)
    assert (a.params["a"], a.params["b"], a.params["k"], a.params["s"]) == (4, 1, 2, 4)
    assert a.guaranteed_l1 == F(1, 100) and a.verified
    b = lemma36_witness(F(9, 10), F(1, 10), 12)
    assert (b.params["a"], b.params["b"], b.params["k"]) == (10, 8, 9)
    assert b.guaranteed_l1 == F(1, 100) and b.verified
    with pytest.raises(OutOfRange):
        lemma36_witness(F(1, 2), F(1, 4), 5)


def test_witness_json_roundtrips_parameters():
    out = lemma36_witness(F(1, 2), F(1, 4), 6, "linf").to_json()
    assert out["params"]["q"] == "1/2" and out["guaranteed_linf"] == "1/20"
    assert all(out["checks"].values())


@given(st.integers(2, 7).flatmap(lambda s: st.tuples(st.integers(1, s - 1), st.just(s), st.integers(0, 2))))
def test_far_pairs_lie_within_the_diameter(kst):
    k, s, t = kst
    for variant in ("l1", "linf"):
        wit = lemma31_witness(k, s, t, variant)
        assert wit.verified
        assert wit.l1_distance <= diameter_l1(wit.game).value
        assert wit.linf_distance <= diameter_linf(wit.game).value


@given(
    st.fractions(F(1, 20), F(19, 20), max_denominator=20),
    st.sampled_from([F(1), F(1, 2), F(1, 3), F(1, 4), F(2, 5)]),
)
def test_lower_guarantee_and_envelope_sandwich_the_diameter(q, delta):
    n = math.ceil(1 / delta + 2)
    wit = lemma36_witness(q, delta, n)
    assert wit.verified
    basic, _ = thm43_envelope(q, delta)
    assert wit.guaranteed_l1 <= diameter_l1(wit.game).value <= basic
