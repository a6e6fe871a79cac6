"""Shared result vocabularies: zones, series states, parts, Goldberg tags.

Values are plain strings so records serialize directly into CSV and
one-line reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

ZONE_INTERIOR = "Interior"
ZONE_BOUNDARY = "Boundary"
ZONE_EXTERIOR = "Exterior"
ZONES = (ZONE_INTERIOR, ZONE_BOUNDARY, ZONE_EXTERIOR)

CONVERGES = "Converges"
DIVERGES = "Diverges"
INCONCLUSIVE = "Inconclusive"
SERIES_STATES = (CONVERGES, DIVERGES, INCONCLUSIVE)

PART_REGULAR = "Regular"
PART_POINT = "Point"
PART_RESIDUAL = "Residual"
PART_CONTINUOUS = "Continuous"
PART_UNRESOLVED = "Unresolved"
PARTS = (PART_REGULAR, PART_POINT, PART_RESIDUAL, PART_CONTINUOUS, PART_UNRESOLVED)

GOLDBERG_C3 = "C3"
GOLDBERG_C1UC2 = "C1uC2"
GOLDBERG_B2 = "B2"
GOLDBERG_NONE = "None"

# Fine part -> Goldberg state for this operator family: the point spectrum
# sits in C3, the residual spectrum in C1 u C2 and the continuous spectrum
# in B2 (A3 and B3 stay empty here).
GOLDBERG_FOR_PART = {
    PART_REGULAR: GOLDBERG_NONE,
    PART_POINT: GOLDBERG_C3,
    PART_RESIDUAL: GOLDBERG_C1UC2,
    PART_CONTINUOUS: GOLDBERG_B2,
    PART_UNRESOLVED: GOLDBERG_NONE,
}

MEMBER_IN = "In"
MEMBER_OUT = "Out"
MEMBER_UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class SeriesVerdict:
    """Outcome of a numerically truncated series test.

    state is Converges, Diverges or Inconclusive; Inconclusive is an honest
    abstention, never a guess.  ratio_estimate, when present, is the largest
    period-step term ratio observed over the trailing window.
    """

    state: str
    terms_used: int
    last_partial_sum: float
    ratio_estimate: Optional[float] = None
