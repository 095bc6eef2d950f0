"""SeRE: explore semantically related encyclopedia concepts.

For a query term, resolve the best-matching article, harvest candidate
related entities from article links and the category hierarchy, score each
candidate with a normalized distance over full-text hit counts, and enrich
the survivors with categories, thumbnails and explanatory text snippets.
"""

from sere.model import (
    Concept,
    ExplorationResult,
    HitCounts,
    LanguageCode,
    RelatedEntity,
    RelatednessScore,
    RelationOrigin,
    Snippet,
)
from sere.relatedness import score, to_relatedness, wnd_distance

__all__ = [
    "Concept",
    "ExplorationResult",
    "HitCounts",
    "LanguageCode",
    "RelatedEntity",
    "RelatednessScore",
    "RelationOrigin",
    "Snippet",
    "score",
    "to_relatedness",
    "wnd_distance",
]

__version__ = "0.1.0"
