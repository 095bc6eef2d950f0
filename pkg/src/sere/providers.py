"""The uniform data-source interface the pipeline consumes.

Three implementations exist: the offline corpus backend (complete), the
live Wikipedia API client (everything except the category hierarchy) and
the live DBpedia SPARQL client (category hierarchy only).  Methods a
backend cannot serve raise CapabilityNotSupported.
"""

from __future__ import annotations

from typing import Optional

from sere.errors import CapabilityNotSupported


class Provider:
    """Base provider; every capability raises unless overridden.

    Implementations must be safe to call from many threads at once.
    """

    def search(self, term: str, limit: int) -> list[str]:
        """Ranked article titles for a free-text term."""
        raise CapabilityNotSupported("search")

    def hit_count(self, phrase: str) -> int:
        """Number of articles whose full text matches the phrase."""
        raise CapabilityNotSupported("hit_count")

    def cooccurrence_count(self, phrase_a: str, phrase_b: str) -> int:
        """Number of articles matching both phrases (boolean AND)."""
        raise CapabilityNotSupported("cooccurrence_count")

    def article_count(self) -> int:
        """Total number of articles; constant per provider instance."""
        raise CapabilityNotSupported("article_count")

    def full_text(self, title: str) -> str:
        raise CapabilityNotSupported("full_text")

    def out_links(self, title: str) -> list[str]:
        raise CapabilityNotSupported("out_links")

    def in_links(self, title: str, limit: int) -> list[str]:
        raise CapabilityNotSupported("in_links")

    def categories(self, title: str) -> list[str]:
        raise CapabilityNotSupported("categories")

    def broader(self, title: str) -> list[str]:
        raise CapabilityNotSupported("broader")

    def narrower(self, title: str, limit: int) -> list[str]:
        raise CapabilityNotSupported("narrower")

    def description(self, title: str) -> str:
        raise CapabilityNotSupported("description")

    def thumbnail(self, title: str) -> Optional[str]:
        raise CapabilityNotSupported("thumbnail")

    def search_snippets(self, phrase_a: str, phrase_b: str, limit: int) -> list[tuple[str, str]]:
        """Passages from articles matching both phrases, as
        (source_title, passage) pairs."""
        raise CapabilityNotSupported("search_snippets")
