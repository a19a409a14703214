import random
from fractions import Fraction

import pytest

from ps12splines.geometry import Point2, reference_frame


@pytest.fixture(scope="session")
def ref():
    return reference_frame()


@pytest.fixture(scope="session")
def pipeline_report():
    """The full candidate filter pipeline (shared: it is the slow part)."""
    from ps12splines.basis_search import filter_pipeline
    return filter_pipeline()


def rational_points(count, denom=97, seed=0, interior=True):
    """Deterministic rational sample points in the unit triangle."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = Fraction(rng.randint(0, denom), denom)
        b = Fraction(rng.randint(0, denom), denom)
        if a + b > 1:
            continue
        if interior and (a == 0 or b == 0 or a + b == 1):
            continue
        out.append(Point2(a, b))
    return out
