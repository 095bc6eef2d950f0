"""Acceptance gate: one test per top-level guarantee, each printing a
single PASS line with its measured margin.

These tests intentionally overlap the unit suites — they are the
contract, re-checked end to end at the stated tolerances and runtimes.
"""

import itertools
import math
import random
import re
import socket
import threading
import time
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import replace

import pytest
from fastapi.testclient import TestClient

import oracle
from conftest import DEMO_CORPUS, EN, GOLDEN_DIR, random_phrase, write_random_corpus
from sere.corpus import CorpusProvider, corpus_hit_count, ingest_corpus
from sere.enrich import assign_categories
from sere.model import Concept, HitCounts, RelatedEntity, RelatednessScore, article_url
from sere.pipeline import Pipeline, PipelineConfig
from sere.relatedness import INFINITE, score, wnd_distance
from sere.serialize import ALLOWED_FIELDS, serialize_xml
from sere.service import Backend, create_app
from test_pipeline import CountingProvider

GOLDEN = GOLDEN_DIR / "angela_merkel.xml"


def announce(name: str, detail: str) -> None:
    print(f"PASS {name}: {detail}")


def random_counts(rng: random.Random) -> HitCounts:
    total = rng.randint(2, 10**7)
    a = rng.randint(1, total)
    b = rng.randint(1, total)
    if min(a, b) >= total:
        b = total - 1
    both = rng.randint(0, min(a, b))
    return HitCounts(a=a, b=b, both=both, total=total)


@contextmanager
def network_blocked():
    """Fail the test if any code path opens a socket."""

    def deny(*args, **kwargs):
        raise AssertionError("network access attempted during replay test")

    originals = (socket.socket.connect, socket.create_connection, socket.getaddrinfo)
    socket.socket.connect = deny
    socket.create_connection = deny
    socket.getaddrinfo = deny
    try:
        yield
    finally:
        (socket.socket.connect, socket.create_connection, socket.getaddrinfo) = originals


def test_formula_oracle_1000_tuples():
    start = time.perf_counter()
    assert wnd_distance(HitCounts(a=5, b=5, both=5, total=100)) == 0.0
    assert wnd_distance(HitCounts(a=1000, b=100, both=0, total=10**6)) == INFINITE
    derived = wnd_distance(HitCounts(a=1000, b=100, both=50, total=10**6))
    assert derived == pytest.approx(0.3252574989159953, abs=1e-6)

    rng = random.Random(2024)
    worst = 0.0
    for _ in range(1000):
        counts = random_counts(rng)
        got = wnd_distance(counts)
        want = oracle.formula(counts.a, counts.b, counts.both, counts.total)
        if math.isinf(want):
            assert got == INFINITE
            continue
        error = abs(got - want) / max(abs(want), 1e-300)
        worst = max(worst, error)
        assert error <= 1e-12
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    announce("formula-oracle", f"1000 tuples, worst rel err {worst:.2e}, {elapsed:.3f}s")


def test_zero_rule():
    rng = random.Random(99)
    checked = 0
    for _ in range(2000):
        counts = random_counts(rng)
        if counts.both != 0:
            counts = HitCounts(a=counts.a, b=counts.b, both=0, total=counts.total)
        assert score(counts).relatedness == 0.0
        checked += 1
    announce("zero-rule", f"relatedness == 0 for {checked} zero-co-occurrence tuples")


def test_symmetry_and_monotonicity_10000_tuples():
    start = time.perf_counter()
    rng = random.Random(4242)
    for _ in range(10_000):
        counts = random_counts(rng)
        swapped = HitCounts(a=counts.b, b=counts.a, both=counts.both, total=counts.total)
        assert wnd_distance(counts) == wnd_distance(swapped)
        if 0 < counts.both < min(counts.a, counts.b):
            more = HitCounts(counts.a, counts.b, counts.both + 1, counts.total)
            assert wnd_distance(more) < wnd_distance(counts)
        s = score(counts)
        assert 0.0 <= s.relatedness <= 1.0
        assert (s.relatedness == 0.0) == (counts.both == 0 or s.distance >= 1.0)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    announce("symmetry-monotonicity", f"10000 tuples, {elapsed:.2f}s")


def test_index_oracle_equivalence_random_corpus(tmp_path):
    start = time.perf_counter()
    rng = random.Random(7)
    path = write_random_corpus(tmp_path / "random.jsonl", rng, 200)
    corpus = ingest_corpus(path)
    articles = oracle.load_articles(path)
    for _ in range(100):
        phrase = random_phrase(rng)
        assert corpus.matching_titles(phrase) == oracle.matching_titles(articles, phrase)
        assert corpus_hit_count(corpus, phrase) == oracle.hit_count(articles, phrase)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    announce("index-oracle", f"100 phrases x 200 articles, {elapsed:.2f}s")


def test_end_to_end_fixture_oracle(demo_pipeline):
    result = demo_pipeline.explore(EN, "Angela Merkel")
    expected = oracle.explore(oracle.load_articles(DEMO_CORPUS), "Angela Merkel")
    assert [e.concept.title for e in result.entities] == [
        e.concept.title for e in expected.entities
    ]
    assert result.category_index == expected.category_index
    assert [
        [s.track for s in e.snippets] for e in result.entities
    ] == [[s.track for s in e.snippets] for e in expected.entities]
    assert serialize_xml(result) == GOLDEN.read_bytes()

    # the worked grouping example: c1:{X,Y} c2:{X} c3:{Y,Z} c4:{Y}
    def member(title, cats):
        return RelatedEntity(
            concept=Concept(title=title, url=article_url(EN, title), lang=EN),
            score=RelatednessScore(distance=0.5, relatedness=0.5, cooccurring=True),
            categories=tuple(cats),
        )

    assigned, index = assign_categories(
        [member("C1", ["X", "Y"]), member("C2", ["X"]),
         member("C3", ["Y", "Z"]), member("C4", ["Y"])]
    )
    assert [e.assigned_category for e in assigned] == ["Y", "X", "Y", "Y"]
    assert index == [("Y", 3), ("X", 1)]
    announce("end-to-end-oracle",
             f"{len(result.entities)} entities byte-exact vs golden XML")


def test_latency_at_desk_scale(demo_provider):
    pipeline = Pipeline(demo_provider, demo_provider)
    start = time.perf_counter()
    first = pipeline.explore(EN, "Angela Merkel")
    cold = time.perf_counter() - start
    assert cold < 1.0

    start = time.perf_counter()
    second = pipeline.explore(EN, "Angela Merkel")
    cached = time.perf_counter() - start
    assert cached < 0.010
    assert second.from_cache
    assert serialize_xml(replace(second, from_cache=False)) == serialize_xml(first)
    announce("latency", f"cold {cold * 1000:.1f}ms, cached {cached * 1000:.3f}ms")


def test_concurrency_and_bounded_fan_out(demo_provider):
    sequential = Pipeline(demo_provider, demo_provider).explore(EN, "Angela Merkel")
    pipeline = Pipeline(demo_provider, demo_provider)
    barrier = threading.Barrier(16)

    def run():
        barrier.wait()
        return pipeline.explore(EN, "Angela Merkel")

    with ThreadPoolExecutor(max_workers=16) as pool:
        results = [f.result() for f in [pool.submit(run) for _ in range(16)]]
    normalize = lambda r: replace(r, generated_at=sequential.generated_at, from_cache=False)
    assert {normalize(r) for r in results} == {normalize(sequential)}

    counting = CountingProvider(demo_provider)
    cap = 4
    Pipeline(counting, counting, PipelineConfig(max_in_flight=cap)).explore(
        EN, "Angela Merkel"
    )
    assert 2 <= counting.max_in_flight <= cap
    announce("concurrency",
             f"16 equal results; fan-out peak {counting.max_in_flight} <= cap {cap}")


def _assert_schema_valid(document: bytes) -> None:
    root = ET.fromstring(document)
    assert root.tag == "sere"
    assert root.get("version") == "1"
    assert re.fullmatch(r"[a-z]{2}", root.get("lang"))
    assert root.get("from_cache") in ("true", "false")
    concept = root.find("concept")
    assert concept is not None and concept.get("title") and concept.get("url")
    related = root.find("related")
    assert related is not None
    assert int(related.get("count")) == len(related)
    score_format = re.compile(r"\d+\.\d{4}")
    for entity in related:
        assert entity.tag == "entity"
        assert entity.get("title") and entity.get("url")
        if entity.get("sr") is not None:
            assert score_format.fullmatch(entity.get("sr"))
            assert score_format.fullmatch(entity.get("distance"))
        for snippet in entity.findall("snippet"):
            assert snippet.get("track") in ("article_sentence", "search_snippet")
            assert snippet.text
    categories = root.find("categories")
    if categories is not None:
        for category in categories:
            assert category.tag == "category"
            assert category.get("name") and int(category.get("size")) >= 1


def test_service_contract():
    backend = Backend(PipelineConfig(), corpus_path=str(DEMO_CORPUS), langs=("en",))
    client = TestClient(create_app(backend))

    ok = client.get("/api/explore", params={"q": "Angela Merkel"})
    assert ok.status_code == 200
    _assert_schema_valid(ok.content)

    error_cases = [
        ({"q": ""}, 400, "missing_query"),
        ({"q": "Paris", "fields": "bogus"}, 400, "unknown_field"),
        ({"q": "Paris", "format": "yaml"}, 400, "unknown_format"),
        ({"q": "Paris", "lang": "fr"}, 400, "unsupported_language"),
        ({"q": "zzzz nothing"}, 404, "no_match"),
    ]
    for params, status, code in error_cases:
        response = client.get("/api/explore", params=params)
        assert response.status_code == status
        assert ET.fromstring(response.content).get("code") == code

    broken = Backend(PipelineConfig(), corpus_path=str(DEMO_CORPUS), langs=("en",))

    class Dead:
        def explore(self, lang, term, fields=None):
            from sere.errors import AllSourcesFailedError

            raise AllSourcesFailedError("all sources failed")

    broken.pipeline = lambda lang: Dead()
    response = TestClient(create_app(broken)).get("/api/explore", params={"q": "Paris"})
    assert response.status_code == 502
    assert ET.fromstring(response.content).get("code") == "backend_failed"

    full = ET.fromstring(ok.content)
    full_titles = [e.get("title") for e in full.find("related")]
    subsets = 0
    for size in range(len(ALLOWED_FIELDS) + 1):
        for subset in itertools.combinations(sorted(ALLOWED_FIELDS), size):
            response = client.get(
                "/api/explore",
                params={"q": "Angela Merkel", "fields": ",".join(subset)},
            )
            assert response.status_code == 200
            _assert_schema_valid(response.content)
            root = ET.fromstring(response.content)
            assert [e.get("title") for e in root.find("related")] == full_titles
            present = {child.tag for e in root.find("related") for child in e}
            allowed_children = set()
            if "snippets" in subset:
                allowed_children.add("snippet")
            if "thumbnail" in subset:
                allowed_children.add("thumbnail")
            assert present <= allowed_children
            subsets += 1
    assert subsets == 32
    announce("service-contract",
             "schema-valid XML, 6 error cases, 32 field subsets monotone")


def test_live_client_replay_without_network():
    with network_blocked():
        import test_live_clients as replay

        replay.TestWikipediaParsing().test_search_preserves_api_rank_order()
        replay.TestWikipediaParsing().test_hit_count_quotes_phrase()
        replay.TestWikipediaParsing().test_out_links_follow_continuation()
        replay.TestWikipediaTransport().test_server_errors_retried_until_budget_exhausted()
        replay.TestDBpedia().test_categories_parsed_from_bindings()
        replay.TestDBpedia().test_missing_bindings_is_malformed()
    announce("live-replay", "recorded-fixture client tests ran with sockets blocked")
