"""Exact weight polytopes, diameter bounds and power indices for weighted voting games."""

from .bounds import bound_report, laakso_bounds, lemma41_bound, lemma42_bound, thm43_envelope
from .constructions import (
    ConstructionWitness,
    lemma31_witness,
    lemma32_witness,
    lemma33_witness,
    lemma34_witness,
    lemma35_witness,
    lemma36_witness,
    make_vkst,
)
from .games import Coalition, SimpleGame, WeightedRepresentation, classify_players, dual, realize
from .lp import LinearProgram, solve
from .polytope import (
    PolytopeOracle,
    build_polytope,
    diameter_l1,
    diameter_linf,
    is_weighted,
    membership,
    perturb_toward,
    representable_point,
)
from .power import penrose_banzhaf, representation_compatible, shapley_shubik

__version__ = "0.1.0"

__all__ = [
    "Coalition",
    "SimpleGame",
    "WeightedRepresentation",
    "realize",
    "dual",
    "classify_players",
    "LinearProgram",
    "solve",
    "build_polytope",
    "membership",
    "PolytopeOracle",
    "diameter_l1",
    "diameter_linf",
    "is_weighted",
    "representable_point",
    "perturb_toward",
    "laakso_bounds",
    "thm43_envelope",
    "lemma41_bound",
    "lemma42_bound",
    "bound_report",
    "ConstructionWitness",
    "make_vkst",
    "lemma31_witness",
    "lemma32_witness",
    "lemma33_witness",
    "lemma34_witness",
    "lemma35_witness",
    "lemma36_witness",
    "shapley_shubik",
    "penrose_banzhaf",
    "representation_compatible",
]
