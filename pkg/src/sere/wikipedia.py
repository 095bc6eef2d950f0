"""Live MediaWiki API client.

Hit counts come from the full-text search total-hits field; in-links from
the backlinks list; out-links from page links.  Every call carries a
configurable user agent and timeout, retries transient failures up to the
retry budget, and classifies errors as retriable or permanent.
"""

from __future__ import annotations

import html
import re
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import requests

from sere.errors import (
    HttpStatusError,
    MalformedResponseError,
    NetworkError,
    ProviderError,
    RateLimitError,
)
from sere.model import LanguageCode
from sere.providers import Provider

DEFAULT_USER_AGENT = "sere/0.1 (semantic relatedness explorer)"

_TAG_RE = re.compile(r"<[^>]+>")


@dataclass(frozen=True)
class WikipediaConfig:
    base_url: str = ""  # derived from lang when empty
    timeout: float = 10.0
    retries: int = 2
    retry_wait: float = 0.5
    user_agent: str = DEFAULT_USER_AGENT
    inlink_cap: int = 500
    outlink_cap: int = 500
    extra_params: dict = field(default_factory=dict)


def _quote_phrase(phrase: str) -> str:
    return '"' + phrase.replace('"', "") + '"'


class WikipediaProvider(Provider):
    """Provider over one Wikipedia edition's action API."""

    def __init__(
        self,
        lang: LanguageCode,
        config: WikipediaConfig = WikipediaConfig(),
        session: Optional[requests.Session] = None,
    ):
        self.lang = lang
        self.config = config
        self.base_url = config.base_url or f"https://{lang.code}.wikipedia.org/w/api.php"
        self.session = session or requests.Session()
        self._article_count: Optional[int] = None

    # -- transport ---------------------------------------------------------

    def _get(self, params: dict[str, Any]) -> dict:
        query = {"format": "json", "formatversion": "2", **params, **self.config.extra_params}
        attempts = self.config.retries + 1
        last_error: ProviderError = NetworkError("request never attempted", self.base_url)
        for attempt in range(attempts):
            if attempt:
                time.sleep(self.config.retry_wait)
            try:
                response = self.session.get(
                    self.base_url,
                    params=query,
                    timeout=self.config.timeout,
                    headers={"User-Agent": self.config.user_agent},
                )
            except requests.RequestException as exc:
                last_error = NetworkError(str(exc), self.base_url)
                continue
            if response.status_code == 429:
                last_error = RateLimitError(self.base_url)
                continue
            if response.status_code >= 500:
                last_error = HttpStatusError(response.status_code, self.base_url)
                continue
            if response.status_code != 200:
                raise HttpStatusError(response.status_code, self.base_url)
            try:
                payload = response.json()
            except ValueError as exc:
                raise MalformedResponseError(f"invalid JSON: {exc}", self.base_url) from exc
            if not isinstance(payload, dict):
                raise MalformedResponseError("response is not an object", self.base_url)
            if "error" in payload:
                code = payload["error"].get("code", "unknown")
                raise MalformedResponseError(f"API error: {code}", self.base_url)
            return payload
        raise last_error

    def _require(self, payload: dict, *path: str) -> Any:
        node: Any = payload
        for key in path:
            if not isinstance(node, dict) or key not in node:
                raise MalformedResponseError(
                    f"missing field {'.'.join(path)!r} in response", self.base_url
                )
            node = node[key]
        return node

    # -- search and counts -------------------------------------------------

    def search(self, term: str, limit: int) -> list[str]:
        payload = self._get({
            "action": "query",
            "list": "search",
            "srsearch": term,
            "srlimit": str(limit),
        })
        hits = self._require(payload, "query", "search")
        return [hit["title"] for hit in hits if "title" in hit]

    def _total_hits(self, srsearch: str) -> int:
        payload = self._get({
            "action": "query",
            "list": "search",
            "srsearch": srsearch,
            "srlimit": "1",
            "srprop": "",
            "srinfo": "totalhits",
        })
        total = self._require(payload, "query", "searchinfo", "totalhits")
        return int(total)

    def hit_count(self, phrase: str) -> int:
        return self._total_hits(_quote_phrase(phrase))

    def cooccurrence_count(self, phrase_a: str, phrase_b: str) -> int:
        return self._total_hits(f"{_quote_phrase(phrase_a)} {_quote_phrase(phrase_b)}")

    def article_count(self) -> int:
        if self._article_count is None:
            payload = self._get({
                "action": "query",
                "meta": "siteinfo",
                "siprop": "statistics",
            })
            self._article_count = int(
                self._require(payload, "query", "statistics", "articles")
            )
        return self._article_count

    # -- links -------------------------------------------------------------

    def out_links(self, title: str) -> list[str]:
        titles: list[str] = []
        params = {
            "action": "query",
            "prop": "links",
            "titles": title,
            "plnamespace": "0",
            "pllimit": "max",
        }
        cont: dict[str, str] = {}
        while len(titles) < self.config.outlink_cap:
            payload = self._get({**params, **cont})
            pages = self._require(payload, "query", "pages")
            for page in pages:
                titles.extend(link["title"] for link in page.get("links", []))
            if "continue" not in payload:
                break
            cont = payload["continue"]
        return titles[: self.config.outlink_cap]

    def in_links(self, title: str, limit: int) -> list[str]:
        limit = min(limit, self.config.inlink_cap)
        titles: list[str] = []
        params = {
            "action": "query",
            "list": "backlinks",
            "bltitle": title,
            "blnamespace": "0",
            "bllimit": "max",
        }
        cont: dict[str, str] = {}
        while len(titles) < limit:
            payload = self._get({**params, **cont})
            backlinks = self._require(payload, "query", "backlinks")
            titles.extend(item["title"] for item in backlinks)
            if "continue" not in payload:
                break
            cont = payload["continue"]
        return titles[:limit]

    # -- page data -----------------------------------------------------------

    def _extract(self, title: str, intro_only: bool) -> str:
        params = {
            "action": "query",
            "prop": "extracts",
            "titles": title,
            "explaintext": "1",
        }
        if intro_only:
            params["exintro"] = "1"
        payload = self._get(params)
        pages = self._require(payload, "query", "pages")
        for page in pages:
            return page.get("extract", "") or ""
        return ""

    def full_text(self, title: str) -> str:
        return self._extract(title, intro_only=False)

    def description(self, title: str) -> str:
        return self._extract(title, intro_only=True)

    def thumbnail(self, title: str) -> Optional[str]:
        payload = self._get({
            "action": "query",
            "prop": "pageimages",
            "titles": title,
            "piprop": "thumbnail",
            "pithumbsize": "200",
        })
        pages = self._require(payload, "query", "pages")
        for page in pages:
            thumb = page.get("thumbnail")
            if thumb and "source" in thumb:
                return thumb["source"]
        return None

    def search_snippets(self, phrase_a: str, phrase_b: str, limit: int) -> list[tuple[str, str]]:
        payload = self._get({
            "action": "query",
            "list": "search",
            "srsearch": f"{_quote_phrase(phrase_a)} {_quote_phrase(phrase_b)}",
            "srlimit": str(limit),
            "srprop": "snippet",
        })
        hits = self._require(payload, "query", "search")
        passages = []
        for hit in hits:
            snippet = _strip_markup(hit.get("snippet", ""))
            if snippet and "title" in hit:
                passages.append((hit["title"], snippet))
        return passages


def _strip_markup(snippet_html: str) -> str:
    return html.unescape(_TAG_RE.sub("", snippet_html)).strip()
