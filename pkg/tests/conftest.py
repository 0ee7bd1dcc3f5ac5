from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from weightpoly.games import WeightedRepresentation  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def representations(draw, min_n: int = 1, max_n: int = 6, max_weight: int = 12, strict: bool = False):
    """Integer ``[q; w]`` with positive total weight, normalized on request by the caller.

    With ``strict`` the quota stays below the total, so the normalized quota is in ``(0, 1)``.
    """
    n = draw(st.integers(min_n, max_n))
    w = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n).filter(lambda xs: sum(xs) >= 2))
    top = sum(w) - 1 if strict else sum(w)
    q = draw(st.integers(1, top))
    return WeightedRepresentation.of(q, w)


@st.composite
def normalized_vectors(draw, min_n: int = 1, max_n: int = 10, scale: int = 30):
    n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.integers(0, scale), min_size=n, max_size=n).filter(any))
    total = sum(raw)
    return tuple(Fraction(x, total) for x in raw)
