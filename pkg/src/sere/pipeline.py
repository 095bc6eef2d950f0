"""End-to-end orchestration: resolve, harvest, score, enrich, rank, cache.

Scoring and enrichment fan out over a bounded thread pool; results are
memoized in an LRU cache with a TTL and an injectable clock.
"""

from __future__ import annotations

import logging
import threading
import time
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Callable, Iterable, Optional

from sere import relatedness
from sere.errors import SereError
from sere.harvest import harvest_candidates, resolve_concept
from sere.enrich import enrich_entities
from sere.model import (
    Concept,
    ExplorationResult,
    HitCounts,
    LanguageCode,
    RelatedEntity,
    RelationOrigin,
    article_url,
    rank_key,
)
from sere.providers import Provider

log = logging.getLogger(__name__)

ALLOWED_FIELDS = frozenset({"sr", "category", "thumbnail", "snippets", "description"})


@dataclass(frozen=True)
class PipelineConfig:
    max_in_flight: int = 32
    candidate_cap: int = 400
    snippet_cap: int = 3
    inlink_cap: int = 500
    cache_ttl: float = 24 * 3600.0
    cache_capacity: int = 1000

    def __post_init__(self):
        for name in ("max_in_flight", "candidate_cap", "snippet_cap",
                     "inlink_cap", "cache_capacity"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.cache_ttl <= 0:
            raise ValueError("cache_ttl must be positive")
        if self.max_in_flight > 1024:
            raise ValueError("max_in_flight must not exceed 1024")


@dataclass(frozen=True)
class CacheKey:
    lang: str
    query: str
    fields: tuple[str, ...]

    @classmethod
    def of(cls, lang: LanguageCode, title: str, fields: Iterable[str]) -> "CacheKey":
        return cls(lang=lang.code, query=title, fields=tuple(sorted(set(fields))))


class ResultCache:
    """Thread-safe LRU cache with per-entry TTL and injectable clock."""

    def __init__(self, capacity: int, ttl: float, clock: Callable[[], float] = time.monotonic):
        self.capacity = capacity
        self.ttl = ttl
        self.clock = clock
        self._lock = threading.Lock()
        self._entries: OrderedDict[CacheKey, tuple[float, ExplorationResult]] = OrderedDict()

    def get(self, key: CacheKey) -> Optional[ExplorationResult]:
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                return None
            stored_at, value = entry
            if self.clock() - stored_at >= self.ttl:
                del self._entries[key]
                return None
            self._entries.move_to_end(key)
            return value

    def put(self, key: CacheKey, value: ExplorationResult) -> None:
        with self._lock:
            self._entries[key] = (self.clock(), value)
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)


def rank(entities: list[RelatedEntity]) -> list[RelatedEntity]:
    """Relatedness descending, ties by canonical title ascending (stable)."""
    return sorted(entities, key=rank_key)


class Pipeline:
    """Shared, thread-safe explorer bound to one pair of providers."""

    def __init__(self, wiki: Provider, semantic: Provider,
                 config: PipelineConfig = PipelineConfig()):
        self.wiki = wiki
        self.semantic = semantic
        self.config = config
        self.cache = ResultCache(config.cache_capacity, config.cache_ttl)
        self._executor = ThreadPoolExecutor(
            max_workers=config.max_in_flight, thread_name_prefix="sere"
        )

    def explore(
        self,
        lang: LanguageCode,
        term: str,
        fields: Optional[Iterable[str]] = None,
    ) -> ExplorationResult:
        """Full exploration for one query term.

        Raises NoMatchError when resolution finds nothing and
        AllSourcesFailedError when no harvest source answers; individual
        candidate failures degrade to warnings.
        """
        selected = frozenset(fields) if fields is not None else ALLOWED_FIELDS
        unknown = selected - ALLOWED_FIELDS
        if unknown:
            raise ValueError(f"unknown field {sorted(unknown)[0]!r}")

        concept = resolve_concept(self.wiki, lang, term)
        key = CacheKey.of(lang, concept.title, selected)
        cached = self.cache.get(key)
        if cached is not None:
            return replace(cached, from_cache=True)

        candidates, warnings = harvest_candidates(
            self.wiki,
            self.semantic,
            concept,
            inlink_cap=self.config.inlink_cap,
            candidate_cap=self.config.candidate_cap,
            executor=self._executor,
        )
        scored, score_warnings = self._score_candidates(lang, concept, candidates)
        warnings.extend(score_warnings)

        entities, category_index, enrich_warnings = enrich_entities(
            self.wiki,
            self.semantic,
            concept,
            scored,
            snippet_cap=self.config.snippet_cap,
            executor=self._executor,
        )
        warnings.extend(enrich_warnings)

        result = ExplorationResult(
            query=term,
            concept=concept,
            entities=tuple(rank(entities)),
            category_index=tuple(category_index),
            generated_at=datetime.now(timezone.utc),
            from_cache=False,
            warnings=tuple(warnings),
        )
        self.cache.put(key, result)
        return result

    def suggest(self, term: str, limit: int) -> list[str]:
        return self.wiki.search(term, limit)

    def close(self) -> None:
        self._executor.shutdown(wait=False)

    def _score_candidates(
        self,
        lang: LanguageCode,
        concept: Concept,
        candidates: list[tuple[str, frozenset[RelationOrigin]]],
    ) -> tuple[list[RelatedEntity], list[str]]:
        concept_hits = self.wiki.hit_count(concept.title)
        total = self.wiki.article_count()

        def score_one(candidate: tuple[str, frozenset[RelationOrigin]]):
            title, origins = candidate
            try:
                hits = self.wiki.hit_count(title)
                both = self.wiki.cooccurrence_count(concept.title, title)
                counts = HitCounts(a=concept_hits, b=hits, both=both, total=total)
                score = relatedness.score(counts)
            except (SereError, ValueError) as exc:
                return None, f"candidate {title!r} dropped: {exc}"
            entity = RelatedEntity(
                concept=Concept(title=title, url=article_url(lang, title), lang=lang),
                score=score,
                origins=origins,
            )
            return entity, None

        outcomes = list(self._executor.map(score_one, candidates))
        entities = [entity for entity, _ in outcomes if entity is not None]
        warnings = [warning for _, warning in outcomes if warning is not None]
        return entities, warnings
