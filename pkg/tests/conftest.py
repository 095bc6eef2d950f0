import random
from pathlib import Path

import pytest

from sere.corpus import CorpusProvider, ingest_corpus
from sere.model import LanguageCode
from sere.pipeline import Pipeline, PipelineConfig

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_CORPUS = REPO_ROOT / "fixtures" / "demo.jsonl"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

EN = LanguageCode("en")

VOCABULARY = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "omicron", "pi", "rho",
    "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega", "euro",
    "crisis", "bank", "north", "south", "river", "città", "straße",
]


@pytest.fixture(scope="session")
def demo_corpus():
    return ingest_corpus(DEMO_CORPUS)


@pytest.fixture(scope="session")
def demo_provider(demo_corpus):
    return CorpusProvider(demo_corpus)


@pytest.fixture()
def demo_pipeline(demo_provider):
    return Pipeline(demo_provider, demo_provider, PipelineConfig())


def random_article(rng: random.Random, index: int) -> dict:
    words = [rng.choice(VOCABULARY) for _ in range(rng.randint(10, 40))]
    sentences = []
    while words:
        take, words = words[: rng.randint(3, 8)], words[rng.randint(3, 8):]
        if take:
            sentences.append(" ".join(take).capitalize() + ".")
    return {
        "title": f"Article {index}",
        "text": " ".join(sentences),
        "links": [],
        "categories": [],
    }


def write_random_corpus(path: Path, rng: random.Random, n: int) -> Path:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        for i in range(n):
            fh.write(json.dumps(random_article(rng, i)) + "\n")
    return path


def random_phrase(rng: random.Random) -> str:
    return " ".join(rng.choice(VOCABULARY) for _ in range(rng.randint(1, 3)))
