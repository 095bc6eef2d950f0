"""The normalized distance over full-text hit counts and its [0, 1] mapping.

The distance for counts (a, b, both, total) is

    (log10(max(a, b)) - log10(both)) / (log10(total) - log10(min(a, b)))

with the degenerate zero-co-occurrence case mapped to infinity.  Ranking
and display use relatedness = clamp(1 - distance, 0, 1), so a term is at
relatedness 1 to itself and at 0 when the pair never co-occurs.
"""

from __future__ import annotations

import math

from sere.errors import ScoreDomainError
from sere.model import HitCounts, RelatednessScore

INFINITE = math.inf


def wnd_distance(counts: HitCounts) -> float:
    """Distance for one pair of hit counts; ``INFINITE`` when both = 0.

    Raises ScoreDomainError when either term has zero hits (an unknown
    term is a failure, not a zero score) or when min(a, b) >= total
    (denominator would be nonpositive).
    """
    a, b, both, total = counts.a, counts.b, counts.both, counts.total
    if a == 0 or b == 0:
        raise ScoreDomainError("term with zero hits has no defined distance")
    if min(a, b) >= total:
        raise ScoreDomainError("min(a, b) must be smaller than the article total")
    if both == 0:
        return INFINITE
    numerator = math.log10(max(a, b)) - math.log10(both)
    denominator = math.log10(total) - math.log10(min(a, b))
    return numerator / denominator


def to_relatedness(distance: float) -> float:
    """Map a distance to the [0, 1] display value; infinity maps to 0."""
    if math.isinf(distance):
        return 0.0
    return max(0.0, 1.0 - distance)


def score(counts: HitCounts) -> RelatednessScore:
    """Compose distance and mapping into a full score."""
    distance = wnd_distance(counts)
    return RelatednessScore(
        distance=distance,
        relatedness=to_relatedness(distance),
        cooccurring=counts.both > 0,
    )
