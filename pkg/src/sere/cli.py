"""Command-line access to the pipeline.

``sere query`` runs one exploration and prints it as a table, XML or
JSON (the latter two byte-identical to the web service's responses);
``sere ingest-check`` validates a corpus file.
"""

from __future__ import annotations

import os
import sys
from typing import Optional

import click

from sere import serialize
from sere.corpus import CorpusProvider, ingest_corpus
from sere.dbpedia import DBpediaProvider
from sere.errors import (
    AllSourcesFailedError,
    CorpusFormatError,
    NoMatchError,
    ProviderError,
)
from sere.model import ExplorationResult, LanguageCode
from sere.pipeline import Pipeline, PipelineConfig
from sere.wikipedia import WikipediaProvider

EXIT_NO_MATCH = 1
EXIT_USAGE = 2
EXIT_BACKEND = 3
EXIT_CORPUS = 4


def _build_pipeline(backend: str, lang: LanguageCode) -> Pipeline:
    config = PipelineConfig()
    if "SERE_MAX_IN_FLIGHT" in os.environ:
        config = PipelineConfig(max_in_flight=int(os.environ["SERE_MAX_IN_FLIGHT"]))
    if backend.startswith("corpus:"):
        provider = CorpusProvider(ingest_corpus(backend.split(":", 1)[1], lang=lang.code))
        return Pipeline(provider, provider, config)
    if backend == "live":
        return Pipeline(WikipediaProvider(lang), DBpediaProvider(lang), config)
    raise click.UsageError(f"unknown backend {backend!r}")


def _print_table(result: ExplorationResult, top: int) -> None:
    click.echo(f"query: {result.query}")
    click.echo(f"concept: {result.concept.title} <{result.concept.url}>")
    header = f"{'rank':>4}  {'sr':>6}  {'title':<40}  category"
    click.echo(header)
    click.echo("-" * len(header))
    for rank, entity in enumerate(result.entities[:top], start=1):
        sr = serialize.format_score(entity.score.relatedness)
        category = entity.assigned_category or "-"
        click.echo(f"{rank:>4}  {sr:>6}  {entity.concept.title:<40}  {category}")


@click.group()
def main() -> None:
    """Explore semantically related encyclopedia concepts."""


@main.command()
@click.argument("term")
@click.option("--lang", "lang_code", default="en", show_default=True)
@click.option("--backend", default=lambda: os.environ.get("SERE_BACKEND", "live"),
              help="'live' or 'corpus:<path>'.")
@click.option("--fields", "fields_csv", default=None,
              help="Comma-separated subset of sr,category,thumbnail,snippets,description.")
@click.option("--format", "fmt", type=click.Choice(["xml", "json", "table"]),
              default="table", show_default=True)
@click.option("--top", default=20, show_default=True, help="Rows in table output.")
def query(term: str, lang_code: str, backend: str, fields_csv: Optional[str],
          fmt: str, top: int) -> None:
    """Run one exploration for TERM and print the result."""
    if not term.strip():
        raise click.UsageError("term must be nonempty")
    try:
        lang = LanguageCode(lang_code)
        fields = serialize.parse_fields(fields_csv)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    try:
        pipeline = _build_pipeline(backend, lang)
    except (CorpusFormatError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    try:
        result = pipeline.explore(lang, term, fields)
    except NoMatchError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NO_MATCH)
    except (AllSourcesFailedError, ProviderError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)

    if fmt == "xml":
        sys.stdout.buffer.write(serialize.serialize_xml(result, fields))
    elif fmt == "json":
        sys.stdout.buffer.write(serialize.serialize_json(result, fields))
    else:
        _print_table(result, top)


@main.command("ingest-check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def ingest_check(path: str) -> None:
    """Validate a corpus file and print its statistics."""
    try:
        corpus = ingest_corpus(path)
    except CorpusFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CORPUS)
    click.echo(f"{corpus.article_count()} articles")
    click.echo(f"{len(corpus.token_index)} distinct tokens")
    click.echo(f"{len(corpus.inlink_index)} link targets")


if __name__ == "__main__":
    main()
