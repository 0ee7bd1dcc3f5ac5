from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from conftest import representations
from weightpoly.constructions import lemma33_witness, lemma35_witness, lemma36_witness
from weightpoly.games import WeightedRepresentation, classify_players, realize
from weightpoly.power import (
    GamesDiffer,
    NotEfficient,
    OutOfRange,
    PowerVector,
    distance_report,
    pair_lower_bound,
    penrose_banzhaf,
    prop54_harness,
    representation_compatible,
    shapley_shubik,
)

F = Fraction
INTRO = realize(WeightedRepresentation.of(51, [35, 34, 17, 14]))
THIRDS = (F(1, 3), F(1, 3), F(1, 3), F(0))


def test_intro_indices():
    assert shapley_shubik(INTRO).values == THIRDS
    assert penrose_banzhaf(INTRO).values == THIRDS


def test_small_index_examples():
    assert shapley_shubik(realize(WeightedRepresentation.of(1, [1, 0, 0]))).values == (1, 0, 0)
    assert shapley_shubik(realize(WeightedRepresentation.of(2, [1, 1]))).values == (F(1, 2), F(1, 2))
    assert penrose_banzhaf(realize(WeightedRepresentation.of(1, [1, 0])), normalized=False).values == (1, 0)
    raw = penrose_banzhaf(realize(WeightedRepresentation.of(2, [1, 1, 1])), normalized=False)
    assert raw.values == (F(1, 2),) * 3 and raw.to_json()["index"] == "pbi_raw"


def test_compatibility():
    res = representation_compatible(INTRO, shapley_shubik(INTRO))
    assert res.compatible and (res.max_losing, res.min_winning, res.quota) == (F(1, 3), F(2, 3), F(1, 2))
    v = realize(WeightedRepresentation.of(3, [2, 1, 1]))
    no = representation_compatible(v, PowerVector((F(0), F(1, 2), F(1, 2)), "ssi"))
    assert not no.compatible and no.losing.players() == (2, 3) and no.max_losing == 1
    uniform = realize(WeightedRepresentation.of(4, [1] * 4))
    yes = representation_compatible(uniform, PowerVector((F(1, 4),) * 4, "ssi"))
    assert yes.compatible and yes.min_winning == 1
    with pytest.raises(NotEfficient):
        representation_compatible(v, PowerVector((F(1, 2), F(1, 2), F(1, 2)), "pbi_raw"))


def test_intro_distance():
    rep = WeightedRepresentation.of(51, [35, 34, 17, 14]).normalize()
    rpt = distance_report(rep, shapley_shubik(INTRO))
    assert rpt.l1 == F(49, 150) and rpt.bound is not None and rpt.holds
    same = distance_report(WeightedRepresentation(F(1, 2), THIRDS), PowerVector(THIRDS, "ssi"))
    assert same.l1 == 0
    with pytest.raises(OutOfRange):
        distance_report(WeightedRepresentation(F(1), THIRDS), PowerVector(THIRDS, "ssi"))


def test_staircase_distance_within_envelope():
    rep = WeightedRepresentation.of(F(3, 5), [F(k, 120) for k in range(15, 0, -1)])
    rpt = distance_report(rep, shapley_shubik(realize(rep)))
    if rpt.bound is not None:
        assert rpt.l1 <= F(5, 4)


def test_pair_lower_bound():
    wit = lemma33_witness(F(3, 4), 4)
    phi = shapley_shubik(wit.game)
    assert pair_lower_bound(wit.rep_a, wit.rep_b, phi) == F(1, 3)
    assert pair_lower_bound(wit.rep_a, wit.rep_b, phi, "linf") == F(1, 6)
    assert pair_lower_bound(wit.rep_a, wit.rep_a, phi) == 0
    two = lemma35_witness(F(3, 4), 8)
    assert pair_lower_bound(two.rep_a, two.rep_b, penrose_banzhaf(two.game), "linf") >= F(3, 16)
    other = WeightedRepresentation(F(1, 2), (F(1, 2), F(1, 2), 0, 0))
    with pytest.raises(GamesDiffer):
        pair_lower_bound(wit.rep_a, other, phi)


@pytest.mark.parametrize("q, delta, n, index", [(F(1, 2), F(1, 4), 6, "ssi"), (F(1, 2), F(1, 2), 4, "pbi")])
def test_power_lower_bound_harness(q, delta, n, index):
    record, game = prop54_harness(q, delta, n, index)
    assert all(record.checks(game).values())
    assert record.final_distance >= F(1, 100) == record.guaranteed
    assert (record.k, record.s) in ((1, 2), (2, 2), (2, 4))


@given(representations(max_n=5))
def test_ssi_matches_permutation_oracle(rep):
    v = realize(rep)
    assert shapley_shubik(v).values == oracles.ssi_by_permutations(list(v.winning), v.n)


@given(representations(max_n=7))
def test_index_axioms(rep):
    v = realize(rep)
    cls = classify_players(v)
    swings = oracles.banzhaf_swings(list(v.winning), v.n)
    for phi in (shapley_shubik(v), penrose_banzhaf(v)):
        assert sum(phi.values) == 1
        for i in range(v.n):
            if cls.is_null(i + 1):
                assert phi.values[i] == 0
            for j in range(v.n):
                if cls.equivalent(i + 1, j + 1):
                    assert phi.values[i] == phi.values[j]
    raw = penrose_banzhaf(v, normalized=False).values
    assert raw == tuple(F(s, 2 ** (v.n - 1)) for s in swings)


@given(representations(min_n=2, max_n=6, strict=True))
def test_compatible_power_vectors_obey_the_distance_bound(rep):
    rep = rep.normalize()
    v = realize(rep)
    for phi in (shapley_shubik(v), penrose_banzhaf(v)):
        rpt = distance_report(rep, phi)
        assert rpt.holds
        if rpt.bound is not None:
            q = representation_compatible(v, phi).quota
            assert realize(WeightedRepresentation(q, phi.values)) == v


def test_lemma_pairs_bound_any_index():
    for q in (F(1, 5), F(1, 2), F(7, 8)):
        for delta in (F(1, 2), F(1, 4)):
            wit = lemma36_witness(q, delta, math.ceil(1 / delta + 2))
            for phi in (shapley_shubik(wit.game), penrose_banzhaf(wit.game)):
                half = pair_lower_bound(wit.rep_a, wit.rep_b, phi)
                assert half == wit.l1_distance / 2
