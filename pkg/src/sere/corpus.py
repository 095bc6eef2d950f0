"""Offline corpus backend: ingestion, phrase index, and the provider.

The corpus is a UTF-8 JSON Lines file, one article object per line with
required keys ``title``, ``text``, ``links``, ``categories`` and optional
``broader``, ``narrower``, ``description``, ``thumbnail``.  It serves as
the deterministic stand-in for the live encyclopedia backends.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from sere import text as textrules
from sere.errors import CorpusFormatError, DuplicateTitleError
from sere.model import LanguageCode, canonical_title
from sere.providers import Provider

_REQUIRED_KEYS = ("title", "text", "links", "categories")


@dataclass(frozen=True)
class CorpusArticle:
    title: str
    text: str
    links: tuple[str, ...]
    categories: tuple[str, ...]
    broader: tuple[str, ...] = ()
    narrower: tuple[str, ...] = ()
    description: str = ""
    thumbnail: Optional[str] = None


@dataclass
class Corpus:
    """Immutable after ingestion; both derived indexes are prebuilt."""

    lang: LanguageCode
    articles: dict[str, CorpusArticle]
    token_index: dict[str, frozenset[str]] = field(default_factory=dict)
    inlink_index: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def article_count(self) -> int:
        return len(self.articles)

    def matching_titles(self, phrase: str) -> list[str]:
        """Titles of articles matching the phrase, title ascending.

        The token index narrows the candidate set; the full match rule is
        then applied to each candidate's text.
        """
        toks = textrules.tokens(phrase)
        if toks:
            candidates: Optional[frozenset[str]] = None
            for tok in toks:
                postings = self.token_index.get(tok, frozenset())
                candidates = postings if candidates is None else candidates & postings
                if not candidates:
                    return []
            assert candidates is not None
            pool = sorted(candidates)
        else:
            pool = sorted(self.articles)
        pattern = textrules.phrase_pattern(phrase)
        return [t for t in pool if pattern.search(self.articles[t].text)]


def _parse_article(obj: dict, line_no: int) -> CorpusArticle:
    for key in _REQUIRED_KEYS:
        if key not in obj:
            raise CorpusFormatError(line_no, f"missing required field {key!r}")
    try:
        return CorpusArticle(
            title=canonical_title(obj["title"]),
            text=str(obj["text"]),
            links=tuple(canonical_title(t) for t in obj["links"]),
            categories=tuple(str(c) for c in obj["categories"]),
            broader=tuple(canonical_title(t) for t in obj.get("broader", [])),
            narrower=tuple(canonical_title(t) for t in obj.get("narrower", [])),
            description=str(obj.get("description", "")),
            thumbnail=obj.get("thumbnail"),
        )
    except ValueError as exc:
        raise CorpusFormatError(line_no, str(exc)) from exc


def ingest_corpus(path: str | Path, lang: str = "en") -> Corpus:
    """Read a JSON Lines corpus file and build both derived indexes.

    Raises CorpusFormatError (with the offending line number) on parse
    failures, missing fields or duplicate titles.
    """
    articles: dict[str, CorpusArticle] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(line_no, "article must be a JSON object")
            article = _parse_article(obj, line_no)
            if article.title in articles:
                raise DuplicateTitleError(line_no, article.title)
            articles[article.title] = article

    token_index: dict[str, set[str]] = {}
    inlinks: dict[str, list[str]] = {}
    for title, article in articles.items():
        for tok in set(textrules.tokens(article.text)):
            token_index.setdefault(tok, set()).add(title)
        for target in article.links:
            inlinks.setdefault(target, []).append(title)

    return Corpus(
        lang=LanguageCode(lang),
        articles=articles,
        token_index={t: frozenset(s) for t, s in token_index.items()},
        inlink_index={t: tuple(sorted(s)) for t, s in inlinks.items()},
    )


def corpus_hit_count(corpus: Corpus, phrase: str) -> int:
    return len(corpus.matching_titles(phrase))


def corpus_cooccurrence(corpus: Corpus, phrase_a: str, phrase_b: str) -> int:
    hits_a = set(corpus.matching_titles(phrase_a))
    if not hits_a:
        return 0
    return sum(1 for t in corpus.matching_titles(phrase_b) if t in hits_a)


def corpus_search(corpus: Corpus, term: str, limit: int) -> list[str]:
    """Three-tier ranking: exact title, title prefix, then full-text
    matches by descending phrase frequency; ties by title ascending."""
    needle = " ".join(term.split()).lower()
    if not needle or limit < 1:
        return []
    ranked: list[str] = []
    seen: set[str] = set()

    for title in sorted(corpus.articles):
        if title.lower() == needle:
            ranked.append(title)
            seen.add(title)
    for title in sorted(corpus.articles):
        if title not in seen and title.lower().startswith(needle):
            ranked.append(title)
            seen.add(title)

    by_frequency = []
    for title in corpus.matching_titles(term):
        if title not in seen:
            freq = textrules.count_occurrences(corpus.articles[title].text, term)
            by_frequency.append((-freq, title))
    ranked.extend(title for _, title in sorted(by_frequency))
    return ranked[:limit]


class CorpusProvider(Provider):
    """Complete provider over an ingested corpus; all answers deterministic."""

    def __init__(self, corpus: Corpus, snippet_limit: int = 3):
        self.corpus = corpus
        self.snippet_limit = snippet_limit

    def _article(self, title: str) -> Optional[CorpusArticle]:
        return self.corpus.articles.get(canonical_title(title))

    def search(self, term: str, limit: int) -> list[str]:
        return corpus_search(self.corpus, term, limit)

    def hit_count(self, phrase: str) -> int:
        return corpus_hit_count(self.corpus, phrase)

    def cooccurrence_count(self, phrase_a: str, phrase_b: str) -> int:
        return corpus_cooccurrence(self.corpus, phrase_a, phrase_b)

    def article_count(self) -> int:
        return self.corpus.article_count()

    def full_text(self, title: str) -> str:
        article = self._article(title)
        return article.text if article else ""

    def out_links(self, title: str) -> list[str]:
        article = self._article(title)
        return list(article.links) if article else []

    def in_links(self, title: str, limit: int) -> list[str]:
        return list(self.corpus.inlink_index.get(canonical_title(title), ()))[:limit]

    def categories(self, title: str) -> list[str]:
        article = self._article(title)
        return list(article.categories) if article else []

    def broader(self, title: str) -> list[str]:
        article = self._article(title)
        return list(article.broader) if article else []

    def narrower(self, title: str, limit: int) -> list[str]:
        article = self._article(title)
        return list(article.narrower)[:limit] if article else []

    def description(self, title: str) -> str:
        article = self._article(title)
        return article.description if article else ""

    def thumbnail(self, title: str) -> Optional[str]:
        article = self._article(title)
        return article.thumbnail if article else None

    def search_snippets(self, phrase_a: str, phrase_b: str, limit: int) -> list[tuple[str, str]]:
        """One passage per article matching both phrases, title ascending.

        The passage is the article's first sentence containing phrase_b,
        falling back to the first containing phrase_a.
        """
        hits_a = set(self.corpus.matching_titles(phrase_a))
        passages: list[tuple[str, str]] = []
        for title in self.corpus.matching_titles(phrase_b):
            if title not in hits_a:
                continue
            sentences = textrules.split_sentences(self.corpus.articles[title].text)
            passage = next(
                (s for s in sentences if textrules.phrase_matches(s, phrase_b)),
                None,
            ) or next(
                (s for s in sentences if textrules.phrase_matches(s, phrase_a)),
                None,
            )
            if passage:
                passages.append((title, passage))
            if len(passages) >= limit:
                break
        return passages
