"""Concept resolution and candidate harvesting.

A query term resolves to the top search result; candidates are the union
of the concept's out-links, in-links (capped) and its broader/narrower
terms from the category hierarchy, deduplicated by canonical title.
"""

from __future__ import annotations

import logging
from concurrent.futures import Executor, Future
from typing import Optional

from sere.errors import AllSourcesFailedError, NoMatchError, SereError
from sere.model import (
    Concept,
    LanguageCode,
    RelationOrigin,
    article_url,
    canonical_title,
)
from sere.providers import Provider

log = logging.getLogger(__name__)

# MediaWiki namespace prefixes marking non-entity pages.
NAMESPACE_PREFIXES = (
    "Category:", "File:", "Template:", "Wikipedia:", "Help:", "Portal:",
    "Talk:", "User:", "Module:", "Draft:",
)

RESOLVE_SEARCH_LIMIT = 10


def resolve_concept(provider: Provider, lang: LanguageCode, term: str) -> Concept:
    """Resolve a query term to its best-matching article."""
    if not term.strip():
        raise NoMatchError(term)
    titles = provider.search(term.strip(), RESOLVE_SEARCH_LIMIT)
    if not titles:
        raise NoMatchError(term)
    title = canonical_title(titles[0])
    return Concept(
        title=title,
        url=article_url(lang, title),
        lang=lang,
        description=provider.description(title),
        thumbnail=provider.thumbnail(title),
    )


def _is_entity_title(title: str) -> bool:
    return not any(title.startswith(p) for p in NAMESPACE_PREFIXES)


def harvest_candidates(
    wiki: Provider,
    semantic: Provider,
    concept: Concept,
    inlink_cap: int = 500,
    candidate_cap: int = 400,
    narrower_cap: int = 200,
    executor: Optional[Executor] = None,
) -> tuple[list[tuple[str, frozenset[RelationOrigin]]], list[str]]:
    """Assemble the deduplicated candidate list for a resolved concept.

    Returns (candidates, warnings); candidates are (title, origins) pairs
    in title-ascending order.  One failing source degrades to a warning;
    all four failing is a hard error.
    """
    sources = [
        (RelationOrigin.OUT_LINK, lambda: wiki.out_links(concept.title)),
        (RelationOrigin.IN_LINK, lambda: wiki.in_links(concept.title, inlink_cap)),
        (RelationOrigin.BROADER, lambda: semantic.broader(concept.title)),
        (RelationOrigin.NARROWER, lambda: semantic.narrower(concept.title, narrower_cap)),
    ]

    results: dict[RelationOrigin, list[str]] = {}
    warnings: list[str] = []
    futures: list[tuple[RelationOrigin, Future]] = []
    if executor is not None:
        futures = [(origin, executor.submit(fetch)) for origin, fetch in sources]
        outcomes = [(origin, _await(fut)) for origin, fut in futures]
    else:
        outcomes = [(origin, _call(fetch)) for origin, fetch in sources]

    for origin, (titles, error) in outcomes:
        if error is not None:
            warnings.append(f"harvest source {origin.value} failed: {error}")
            log.warning("harvest source %s failed: %s", origin.value, error)
        else:
            results[origin] = titles
    if not results:
        raise AllSourcesFailedError("every harvest source failed")

    merged: dict[str, set[RelationOrigin]] = {}
    for origin in RelationOrigin:
        for raw in results.get(origin, []):
            try:
                title = canonical_title(raw)
            except ValueError:
                continue
            if title == concept.title or not _is_entity_title(title):
                continue
            merged.setdefault(title, set()).add(origin)

    candidates = sorted(merged.items())
    if len(candidates) > candidate_cap:
        # Truncate in-link-only candidates first; they are the bulkiest source.
        keep = [c for c in candidates if c[1] != {RelationOrigin.IN_LINK}]
        inlink_only = [c for c in candidates if c[1] == {RelationOrigin.IN_LINK}]
        room = max(0, candidate_cap - len(keep))
        candidates = sorted(keep + inlink_only[:room])[:candidate_cap]
        warnings.append(f"candidate set truncated to {candidate_cap}")
    return (
        [(title, frozenset(origins)) for title, origins in candidates],
        warnings,
    )


def _call(fetch):
    try:
        return fetch(), None
    except SereError as exc:
        return [], exc


def _await(future: Future):
    try:
        return future.result(), None
    except SereError as exc:
        return [], exc
