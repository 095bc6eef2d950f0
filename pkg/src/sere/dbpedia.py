"""Live DBpedia SPARQL client for the category hierarchy.

Categories are the dcterms:subject values of the article's resource;
broader terms are the skos:broader parents of those categories; narrower
terms are the inverse, capped by a limit.  Only these three capabilities
are provided — everything else comes from the Wikipedia client.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

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
from sere.wikipedia import DEFAULT_USER_AGENT

_CATEGORY_PREFIXES = (
    "http://dbpedia.org/resource/Category:",
    "http://dbpedia.org/page/Category:",
)

QUERY_CATEGORIES = """\
SELECT DISTINCT ?c WHERE {{
  <{resource}> <http://purl.org/dc/terms/subject> ?c .
}}"""

QUERY_BROADER = """\
SELECT DISTINCT ?b WHERE {{
  <{resource}> <http://purl.org/dc/terms/subject> ?c .
  ?c <http://www.w3.org/2004/02/skos/core#broader> ?b .
}}"""

QUERY_NARROWER = """\
SELECT DISTINCT ?n WHERE {{
  <{resource}> <http://purl.org/dc/terms/subject> ?c .
  ?n <http://www.w3.org/2004/02/skos/core#broader> ?c .
}} LIMIT {limit}"""


@dataclass(frozen=True)
class DBpediaConfig:
    endpoint: str = ""  # derived from lang when empty
    timeout: float = 10.0
    retries: int = 2
    retry_wait: float = 0.5
    user_agent: str = DEFAULT_USER_AGENT


def _endpoint_for(lang: LanguageCode) -> str:
    if lang.code == "en":
        return "https://dbpedia.org/sparql"
    return f"https://{lang.code}.dbpedia.org/sparql"


def strip_category_uri(uri: str) -> str:
    """Human-readable category name from a DBpedia category URI."""
    for prefix in _CATEGORY_PREFIXES:
        if uri.startswith(prefix):
            return uri[len(prefix):].replace("_", " ")
    return uri.rsplit("/", 1)[-1].removeprefix("Category:").replace("_", " ")


class DBpediaProvider(Provider):
    """Partial provider: categories, broader and narrower terms only."""

    def __init__(
        self,
        lang: LanguageCode,
        config: DBpediaConfig = DBpediaConfig(),
        session: Optional[requests.Session] = None,
    ):
        self.lang = lang
        self.config = config
        self.endpoint = config.endpoint or _endpoint_for(lang)
        self.session = session or requests.Session()

    def _resource(self, title: str) -> str:
        return "http://dbpedia.org/resource/" + title.replace(" ", "_")

    def _select(self, query: str, variable: str) -> list[str]:
        attempts = self.config.retries + 1
        last_error: ProviderError = NetworkError("request never attempted", self.endpoint)
        for attempt in range(attempts):
            if attempt:
                time.sleep(self.config.retry_wait)
            try:
                response = self.session.get(
                    self.endpoint,
                    params={"query": query, "format": "application/sparql-results+json"},
                    timeout=self.config.timeout,
                    headers={
                        "User-Agent": self.config.user_agent,
                        "Accept": "application/sparql-results+json",
                    },
                )
            except requests.RequestException as exc:
                last_error = NetworkError(str(exc), self.endpoint)
                continue
            if response.status_code == 429:
                last_error = RateLimitError(self.endpoint)
                continue
            if response.status_code >= 500:
                last_error = HttpStatusError(response.status_code, self.endpoint)
                continue
            if response.status_code != 200:
                raise HttpStatusError(response.status_code, self.endpoint)
            try:
                payload = response.json()
            except ValueError as exc:
                raise MalformedResponseError(f"invalid JSON: {exc}", self.endpoint) from exc
            try:
                bindings = payload["results"]["bindings"]
            except (KeyError, TypeError) as exc:
                raise MalformedResponseError(
                    "missing field 'results.bindings' in response", self.endpoint
                ) from exc
            values = []
            for binding in bindings:
                value = binding.get(variable, {}).get("value")
                if value:
                    values.append(value)
            return values
        raise last_error

    def categories(self, title: str) -> list[str]:
        uris = self._select(
            QUERY_CATEGORIES.format(resource=self._resource(title)), "c"
        )
        return [strip_category_uri(uri) for uri in uris]

    def broader(self, title: str) -> list[str]:
        uris = self._select(QUERY_BROADER.format(resource=self._resource(title)), "b")
        return [strip_category_uri(uri) for uri in uris]

    def narrower(self, title: str, limit: int) -> list[str]:
        uris = self._select(
            QUERY_NARROWER.format(resource=self._resource(title), limit=limit), "n"
        )
        return [strip_category_uri(uri) for uri in uris]
