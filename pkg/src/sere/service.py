"""HTTP web service over the pipeline.

GET /api/explore returns the serialized exploration result (XML by
default, JSON on request) with optional field selection; GET /api/suggest
backs the UI autocomplete; GET /healthz is a liveness probe.  A built UI
bundle, when present, is served from the root path.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.staticfiles import StaticFiles

from sere import serialize
from sere.corpus import CorpusProvider, ingest_corpus
from sere.dbpedia import DBpediaProvider
from sere.errors import AllSourcesFailedError, NoMatchError, ProviderError
from sere.model import LanguageCode
from sere.pipeline import Pipeline, PipelineConfig
from sere.providers import Provider
from sere.wikipedia import WikipediaProvider

DEFAULT_LANGS = ("en", "de")


class Backend:
    """Lazily builds one pipeline per language, shared across requests."""

    def __init__(
        self,
        config: PipelineConfig,
        corpus_path: Optional[str] = None,
        langs: tuple[str, ...] = DEFAULT_LANGS,
    ):
        self.config = config
        self.langs = langs
        self._lock = threading.Lock()
        self._pipelines: dict[str, Pipeline] = {}
        self._corpus_provider: Optional[Provider] = None
        if corpus_path is not None:
            corpus = ingest_corpus(corpus_path)
            self._corpus_provider = CorpusProvider(corpus, snippet_limit=config.snippet_cap)

    def pipeline(self, lang: LanguageCode) -> Pipeline:
        with self._lock:
            existing = self._pipelines.get(lang.code)
            if existing is not None:
                return existing
            if self._corpus_provider is not None:
                wiki: Provider = self._corpus_provider
                semantic: Provider = self._corpus_provider
            else:
                wiki = WikipediaProvider(lang)
                semantic = DBpediaProvider(lang)
            pipeline = Pipeline(wiki, semantic, self.config)
            self._pipelines[lang.code] = pipeline
            return pipeline


def _error_response(code: str, message: str, status: int, fmt: str) -> Response:
    if fmt == "json":
        return Response(
            content=serialize.error_json(code, message),
            status_code=status,
            media_type="application/json",
        )
    return Response(
        content=serialize.error_xml(code, message),
        status_code=status,
        media_type="application/xml",
    )


def create_app(backend: Backend, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="sere", docs_url=None, redoc_url=None)

    @app.get("/healthz")
    def healthz() -> Response:
        return Response(content="ok", media_type="text/plain")

    @app.get("/api/explore")
    def explore(request: Request) -> Response:
        params = request.query_params
        fmt = params.get("format", "xml")
        error_fmt = fmt if fmt in ("xml", "json") else "xml"
        if fmt not in ("xml", "json"):
            return _error_response(
                "unknown_format", f"unknown format {fmt!r}", 400, error_fmt
            )
        term = params.get("q", "")
        if not term.strip():
            return _error_response(
                "missing_query", "query parameter 'q' is required", 400, error_fmt
            )
        lang_code = params.get("lang", "en")
        if lang_code not in backend.langs:
            return _error_response(
                "unsupported_language", f"language {lang_code!r} not enabled", 400, error_fmt
            )
        try:
            fields = serialize.parse_fields(params.get("fields"))
        except ValueError as exc:
            return _error_response(
                "unknown_field", f"unknown field {exc.args[0]!r}", 400, error_fmt
            )
        lang = LanguageCode(lang_code)
        try:
            result = backend.pipeline(lang).explore(lang, term, fields)
        except NoMatchError as exc:
            return _error_response("no_match", str(exc), 404, error_fmt)
        except (AllSourcesFailedError, ProviderError) as exc:
            return _error_response("backend_failed", str(exc), 502, error_fmt)
        if fmt == "json":
            return Response(
                content=serialize.serialize_json(result, fields),
                media_type="application/json",
            )
        return Response(
            content=serialize.serialize_xml(result, fields),
            media_type="application/xml",
        )

    @app.get("/api/suggest")
    def suggest(request: Request) -> Response:
        params = request.query_params
        term = params.get("q", "")
        if not term.strip():
            return _error_response(
                "missing_query", "query parameter 'q' is required", 400, "json"
            )
        lang_code = params.get("lang", "en")
        if lang_code not in backend.langs:
            return _error_response(
                "unsupported_language", f"language {lang_code!r} not enabled", 400, "json"
            )
        try:
            limit = min(max(int(params.get("limit", "10")), 1), 25)
        except ValueError:
            limit = 10
        lang = LanguageCode(lang_code)
        try:
            titles = backend.pipeline(lang).suggest(term.strip(), limit)
        except ProviderError as exc:
            return _error_response("backend_failed", str(exc), 502, "json")
        import json

        return Response(content=json.dumps(titles), media_type="application/json")

    bundle = Path(static_dir) if static_dir else Path("frontend/dist")
    if bundle.is_dir():
        app.mount("/", StaticFiles(directory=str(bundle), html=True), name="ui")

    return app


def config_from_env(env: Optional[dict] = None) -> PipelineConfig:
    env = dict(os.environ if env is None else env)
    kwargs = {}
    if "SERE_CACHE_TTL_SECS" in env:
        kwargs["cache_ttl"] = float(env["SERE_CACHE_TTL_SECS"])
    if "SERE_MAX_IN_FLIGHT" in env:
        kwargs["max_in_flight"] = int(env["SERE_MAX_IN_FLIGHT"])
    return PipelineConfig(**kwargs)


def backend_from_env(env: Optional[dict] = None) -> Backend:
    env = dict(os.environ if env is None else env)
    config = config_from_env(env)
    langs = tuple(
        code.strip() for code in env.get("SERE_LANGS", ",".join(DEFAULT_LANGS)).split(",")
        if code.strip()
    )
    backend_spec = env.get("SERE_BACKEND", "live")
    corpus_path: Optional[str] = None
    if backend_spec.startswith("corpus:"):
        corpus_path = backend_spec.split(":", 1)[1]
    elif backend_spec == "corpus":
        corpus_path = env.get("SERE_CORPUS_PATH")
    elif backend_spec != "live":
        raise ValueError(f"unknown backend {backend_spec!r}")
    if backend_spec != "live" and not corpus_path:
        raise ValueError("corpus backend requires a path")
    return Backend(config, corpus_path=corpus_path, langs=langs)


def create_app_from_env() -> FastAPI:
    """Factory for ``uvicorn sere.service:create_app_from_env --factory``."""
    return create_app(backend_from_env(), static_dir=os.environ.get("SERE_STATIC_DIR"))
