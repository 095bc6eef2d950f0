"""Shared domain types: immutable value objects, no I/O.

Everything here is hashable and safe to share across threads.
"""

from __future__ import annotations

import enum
import logging
import re
import urllib.parse
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

log = logging.getLogger(__name__)

_LANG_RE = re.compile(r"^[a-z]{2}$")

UNCATEGORIZED = "(uncategorized)"


@dataclass(frozen=True)
class LanguageCode:
    """A two-letter lowercase Wikipedia edition tag, e.g. "en" or "de"."""

    code: str

    def __post_init__(self):
        if not _LANG_RE.match(self.code):
            raise ValueError(f"invalid language code {self.code!r}")

    def __str__(self) -> str:
        return self.code


@dataclass(frozen=True)
class HitCounts:
    """The four full-text hit counts the distance formula consumes.

    ``a`` and ``b`` are per-term hit counts, ``both`` the AND-combination
    count, ``total`` the number of articles in the corpus.  ``both`` is
    clamped to min(a, b) if a provider reports an inconsistent larger
    value (live search indexes do this occasionally); the clamp is logged.
    """

    a: int
    b: int
    both: int
    total: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.both < 0:
            raise ValueError("hit counts must be nonnegative")
        if self.total < 1:
            raise ValueError("total article count must be positive")
        if self.total < max(self.a, self.b):
            raise ValueError("total must be at least max(a, b)")
        cap = min(self.a, self.b)
        if self.both > cap:
            log.warning(
                "inconsistent co-occurrence count %d > min(%d, %d); clamping",
                self.both, self.a, self.b,
            )
            object.__setattr__(self, "both", cap)


@dataclass(frozen=True)
class RelatednessScore:
    """Distance plus its display mapping.

    ``distance`` is the raw formula value (infinity when the terms never
    co-occur); ``relatedness`` is the higher-is-closer value in [0, 1]
    used for ranking and color coding.
    """

    distance: float
    relatedness: float
    cooccurring: bool

    def __post_init__(self):
        if not 0.0 <= self.relatedness <= 1.0:
            raise ValueError("relatedness must lie in [0, 1]")
        if not self.cooccurring and self.relatedness != 0.0:
            raise ValueError("non-co-occurring pairs must score 0")


@dataclass(frozen=True)
class Concept:
    """A resolved encyclopedia entity."""

    title: str
    url: str
    lang: LanguageCode
    description: str = ""
    thumbnail: Optional[str] = None

    def __post_init__(self):
        if not self.title:
            raise ValueError("concept title must be nonempty")


class RelationOrigin(enum.Enum):
    """How a candidate entity was discovered."""

    IN_LINK = "in_link"
    OUT_LINK = "out_link"
    BROADER = "broader"
    NARROWER = "narrower"
    CATEGORY_SIBLING = "category_sibling"


class SnippetTrack(enum.Enum):
    ARTICLE_SENTENCE = "article_sentence"
    SEARCH_SNIPPET = "search_snippet"


@dataclass(frozen=True)
class Snippet:
    """A text passage evidencing the relation between two concepts."""

    text: str
    track: SnippetTrack
    source_title: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("snippet text must be nonempty")


@dataclass(frozen=True)
class RelatedEntity:
    """A candidate concept enriched with score, category and snippets."""

    concept: Concept
    score: RelatednessScore
    origins: frozenset[RelationOrigin] = frozenset()
    categories: tuple[str, ...] = ()
    assigned_category: Optional[str] = None
    snippets: tuple[Snippet, ...] = ()

    def __post_init__(self):
        if self.assigned_category is not None and self.assigned_category not in self.categories:
            raise ValueError("assigned_category must be one of the entity's categories")


@dataclass(frozen=True)
class ExplorationResult:
    """The full ranked answer for one query."""

    query: str
    concept: Concept
    entities: tuple[RelatedEntity, ...]
    category_index: tuple[tuple[str, int], ...]
    generated_at: datetime
    from_cache: bool = False
    warnings: tuple[str, ...] = field(default=(), compare=False)


def rank_key(entity: RelatedEntity) -> tuple:
    """Sort key: relatedness descending, ties by canonical title ascending."""
    return (-entity.score.relatedness, entity.concept.title.encode("utf-8"))


def validate_result(result: ExplorationResult) -> None:
    """Check the cross-field invariants of a result; raise ValueError if broken.

    Usable from tests against any pipeline path.
    """
    keys = [rank_key(e) for e in result.entities]
    if keys != sorted(keys):
        raise ValueError("entities are not in rank order")
    counts: dict[str, int] = {}
    for e in result.entities:
        counts[e.assigned_category or UNCATEGORIZED] = (
            counts.get(e.assigned_category or UNCATEGORIZED, 0) + 1
        )
    if dict(result.category_index) != counts:
        raise ValueError("category_index does not match entity assignments")


def canonical_title(raw: str) -> str:
    """Normalize a title: underscores to spaces, whitespace collapsed,
    first character uppercased (mirrors MediaWiki first-letter folding)."""
    collapsed = " ".join(raw.replace("_", " ").split())
    if not collapsed:
        raise ValueError("title is blank")
    return collapsed[0].upper() + collapsed[1:]


def article_url(lang: LanguageCode, title: str) -> str:
    """Deterministic article URL for a canonical title."""
    path = urllib.parse.quote(title.replace(" ", "_"), safe="")
    return f"https://{lang.code}.wikipedia.org/wiki/{path}"
