"""Entity enrichment: dominant-category assignment and snippet extraction.

Only entities with relatedness above zero are enriched.  Snippets follow a
two-track scheme: sentences from the resolved concept's own article text
where the related title occurs, else passages from an AND-combination
full-text search.
"""

from __future__ import annotations

import logging
from concurrent.futures import Executor
from dataclasses import replace
from typing import Optional

from sere import text as textrules
from sere.errors import SereError
from sere.model import UNCATEGORIZED, Concept, RelatedEntity, Snippet, SnippetTrack
from sere.providers import Provider
from sere.text import split_sentences  # re-exported; part of this module's API

__all__ = [
    "assign_categories",
    "split_sentences",
    "article_sentence_snippets",
    "fallback_search_snippets",
    "enrich_entities",
]

log = logging.getLogger(__name__)


def assign_categories(
    entities: list[RelatedEntity],
) -> tuple[list[RelatedEntity], list[tuple[str, int]]]:
    """Give each entity its single dominant category.

    Group sizes are computed over the current result set: a category's
    group contains every entity listing it.  Each entity is assigned its
    largest group (ties by name ascending); entities without categories
    land in a reserved "(uncategorized)" index bucket.  The returned
    index pairs (name, assigned count), count descending then name
    ascending.
    """
    group_size: dict[str, int] = {}
    for entity in entities:
        for name in set(entity.categories):
            group_size[name] = group_size.get(name, 0) + 1

    assigned: list[RelatedEntity] = []
    index_counts: dict[str, int] = {}
    for entity in entities:
        if entity.categories:
            best = min(set(entity.categories), key=lambda c: (-group_size[c], c))
            assigned.append(replace(entity, assigned_category=best))
            index_counts[best] = index_counts.get(best, 0) + 1
        else:
            assigned.append(replace(entity, assigned_category=None))
            index_counts[UNCATEGORIZED] = index_counts.get(UNCATEGORIZED, 0) + 1

    index = sorted(index_counts.items(), key=lambda item: (-item[1], item[0]))
    return assigned, index


def article_sentence_snippets(
    source_text: str, related_title: str, limit: int = 3, source_title: str = ""
) -> list[Snippet]:
    """Track 1: sentences of the concept's article containing the title."""
    snippets = []
    for sentence in textrules.split_sentences(source_text):
        if textrules.phrase_matches(sentence, related_title):
            snippets.append(
                Snippet(
                    text=sentence,
                    track=SnippetTrack.ARTICLE_SENTENCE,
                    source_title=source_title,
                )
            )
            if len(snippets) >= limit:
                break
    return snippets


def fallback_search_snippets(
    provider: Provider, concept_title: str, related_title: str, limit: int = 3
) -> tuple[list[Snippet], Optional[str]]:
    """Track 2: passages from the AND-combination full-text search.

    Provider failures degrade to an empty list plus a warning message;
    snippets are decoration, not core data.
    """
    try:
        passages = provider.search_snippets(concept_title, related_title, limit)
    except SereError as exc:
        warning = f"snippet search for {related_title!r} failed: {exc}"
        log.warning("%s", warning)
        return [], warning
    snippets = [
        Snippet(text=passage, track=SnippetTrack.SEARCH_SNIPPET, source_title=title)
        for title, passage in passages
        if passage
    ]
    return snippets[:limit], None


def enrich_entities(
    wiki: Provider,
    semantic: Provider,
    concept: Concept,
    scored: list[RelatedEntity],
    snippet_cap: int = 3,
    executor: Optional[Executor] = None,
) -> tuple[list[RelatedEntity], list[tuple[str, int]], list[str]]:
    """Enrich all entities scoring above zero; drop the rest.

    Per-entity failures degrade to missing optional fields with warnings.
    Returns (entities, category_index, warnings).
    """
    survivors = [e for e in scored if e.score.relatedness > 0.0]
    warnings: list[str] = []
    try:
        concept_text = wiki.full_text(concept.title)
    except SereError as exc:
        concept_text = ""
        warnings.append(f"full text of {concept.title!r} unavailable: {exc}")

    def enrich_one(entity: RelatedEntity) -> tuple[RelatedEntity, list[str]]:
        notes: list[str] = []
        categories: tuple[str, ...] = ()
        thumbnail = None
        try:
            categories = tuple(semantic.categories(entity.concept.title))
        except SereError as exc:
            notes.append(f"categories for {entity.concept.title!r} unavailable: {exc}")
        try:
            thumbnail = wiki.thumbnail(entity.concept.title)
        except SereError as exc:
            notes.append(f"thumbnail for {entity.concept.title!r} unavailable: {exc}")
        snippets = article_sentence_snippets(
            concept_text,
            entity.concept.title,
            limit=snippet_cap,
            source_title=concept.title,
        )
        if not snippets:
            snippets, warning = fallback_search_snippets(
                wiki, concept.title, entity.concept.title, limit=snippet_cap
            )
            if warning:
                notes.append(warning)
        enriched = replace(
            entity,
            categories=categories,
            snippets=tuple(snippets),
            concept=replace(entity.concept, thumbnail=thumbnail),
        )
        return enriched, notes

    if executor is not None:
        outcomes = list(executor.map(enrich_one, survivors))
    else:
        outcomes = [enrich_one(e) for e in survivors]

    enriched = []
    for entity, notes in outcomes:
        enriched.append(entity)
        warnings.extend(notes)

    final, index = assign_categories(enriched)
    return final, index, warnings
