from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import representations
from oracles import winning_table
from weightpoly.games import (
    Coalition,
    EpsilonTooLarge,
    InvalidGame,
    InvalidRepresentation,
    SimpleGame,
    TooManyPlayers,
    WeightedRepresentation,
    classify_players,
    dual,
    dual_representation,
    evaluate,
    maximal_losing,
    min_losing_slack,
    minimal_winning,
    realize,
)
from weightpoly.rational import as_fraction, decimal_str, fmt, l1_distance, linf_distance

INTRO = WeightedRepresentation.of(51, [35, 34, 17, 14])


def test_coalition_roundtrip_and_set_operations():
    c = Coalition.of([1, 3], 4)
    assert c.members == 0b101 and c.players() == (1, 3) and len(c) == 2
    assert 3 in c and 2 not in c
    assert c.complement().players() == (2, 4)
    assert c.issubset(Coalition.of([1, 2, 3], 4))
    with pytest.raises(ValueError):
        Coalition.of([5], 4)


def test_representation_validation():
    with pytest.raises(InvalidRepresentation):
        WeightedRepresentation.of(0, [1, 1])
    with pytest.raises(InvalidRepresentation):
        WeightedRepresentation.of(3, [1, 1])
    with pytest.raises(InvalidRepresentation):
        WeightedRepresentation.of(1, [1, -1, 2])
    with pytest.raises(TypeError):
        WeightedRepresentation.of(0.5, [1, 1])


def test_rationals_are_canonical():
    assert fmt(Fraction(2)) == "2/1"
    assert as_fraction("3/6") == Fraction(1, 2)
    assert decimal_str(Fraction(2, 3)) == "0.66666666666666666667"
    a, b = (Fraction(1, 2), Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2), Fraction(1, 2))
    assert l1_distance(a, b) == 1 and linf_distance(a, b) == Fraction(1, 2)


def test_intro_game_structure():
    v = realize(INTRO)
    assert [c.players() for c in minimal_winning(v)] == [(1, 2), (1, 3), (2, 3)]
    assert [c.players() for c in maximal_losing(v)] == [(1, 4), (2, 4), (3, 4)]
    cls = classify_players(v)
    assert cls.is_null(4) and not cls.is_null(1)
    assert cls.equivalent(1, 2) and cls.equivalent(2, 3) and not cls.equivalent(1, 4)
    assert evaluate(INTRO, Coalition.of([1, 2], 4)) and not evaluate(INTRO, Coalition.of([3, 4], 4))


def test_majority_and_unanimity_minimal_winning():
    assert len(minimal_winning(realize(WeightedRepresentation.of(2, [1, 1, 1])))) == 3
    assert [c.players() for c in minimal_winning(realize(WeightedRepresentation.of(3, [1, 1, 1])))] == [(1, 2, 3)]


def test_dictator_and_passer_classification():
    v = realize(WeightedRepresentation.of(1, [1, 0, 0]))
    cls = classify_players(v)
    assert cls.is_passer(1) and cls.is_null(2) and cls.is_null(3)


def test_simple_game_validation():
    with pytest.raises(InvalidGame):
        SimpleGame(3, [False, True, False, False, False, False, False, True])  # {1} wins, {1,2} loses
    with pytest.raises(InvalidGame):
        SimpleGame(1, [True, True])
    with pytest.raises(InvalidGame):
        SimpleGame(2, [False, False, False, False])
    with pytest.raises(TooManyPlayers):
        SimpleGame.from_minimal_winning(25, [[1]])


def test_dual_representation_of_majority():
    rep = WeightedRepresentation.of(2, [1, 1, 1]).normalize()
    assert min_losing_slack(rep) == Fraction(1, 3)
    d = dual_representation(rep)
    assert realize(d) == dual(realize(rep))
    with pytest.raises(EpsilonTooLarge):
        dual_representation(rep, Fraction(1, 3))


@given(representations(max_n=7))
def test_realize_matches_direct_enumeration(rep):
    expected = winning_table(rep.quota, rep.weights)
    assert list(realize(rep).winning) == expected


@given(representations(max_n=6), st.integers(1, 50), st.integers(1, 50))
def test_realize_invariant_under_rescaling(rep, num, den):
    c = Fraction(num, den)
    scaled = WeightedRepresentation(rep.quota * c, tuple(x * c for x in rep.weights))
    assert realize(scaled) == realize(rep)


@given(representations(max_n=7))
def test_dual_is_an_involution_and_complements(rep):
    v = realize(rep)
    d = dual(v)
    assert dual(d) == v
    full = v.grand
    for m in range(1 << v.n):
        assert d.winning[m] == (not v.winning[full ^ m])


@given(representations(max_n=6, strict=True))
def test_dual_representation_realizes_the_dual(rep):
    rep = rep.normalize()
    assert realize(dual_representation(rep)) == dual(realize(rep))


@given(representations(max_n=7))
def test_minimal_winning_generate_the_game(rep):
    v = realize(rep)
    rebuilt = SimpleGame.from_minimal_winning(v.n, [c.players() for c in minimal_winning(v)])
    assert rebuilt == v
    for m in v.maximal_losing_masks:
        assert not v.winning[m]
        assert all(v.winning[m | 1 << i] for i in range(v.n) if not m >> i & 1)


@given(representations(max_n=6))
def test_null_players_and_equivalence(rep):
    v = realize(rep)
    cls = classify_players(v)
    for i in range(v.n):
        if rep.weights[i] == 0:
            assert cls.is_null(i + 1)
        for j in range(v.n):
            if rep.weights[i] == rep.weights[j]:
                assert cls.equivalent(i + 1, j + 1)
    assert np.all(np.sort([p for c in cls.classes for p in c]) == np.arange(1, v.n + 1))
