"""Standard polytopes used in examples and tests."""
from __future__ import annotations

from .charts import build_atlas
from .polytope import delzant_polytope

CP2 = ((0, 0), (2, 0), (0, 2))
F1 = ((0, 0), (2, 0), (1, 1), (0, 1))
CP3 = ((0, 0, 0), (2, 0, 0), (0, 0, 2), (0, 2, 0))
BLOWUP_CP3 = ((0, 0, 0), (2, 0, 0), (0, 0, 2), (1, 1, 0), (0, 1, 0), (0, 1, 1))
UNIT_SQUARE = ((0, 0), (1, 0), (0, 1), (1, 1))

# directions whose subtorus closure in CP^2 is smooth, up to sign
CP2_SMOOTH_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1))


def load(points):
    """Verified polytope and its atlas."""
    poly = delzant_polytope(points)
    return poly, build_atlas(poly)
