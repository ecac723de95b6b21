"""Pytest configuration for crosscheck tests."""

from datetime import UTC, datetime
from pathlib import Path

import pytest

from crosscheck.cross_checker import CrossChecker, load_claims, train_pipeline
from crosscheck.forest import RandomForestModel, TrainConfig, save_model
from crosscheck.pipeline import (
    CleanPost,
    clean_posts,
    default_stopwords,
    load_posts,
    save_store,
)
from crosscheck.synthetic import SyntheticData, generate


FIXTURES = Path(__file__).parent / "fixtures"

KABUL_CLAIM = "No marines were killed in the Kabul airport attack, they were just injured."
KABUL_TIME = datetime(2021, 8, 26, 12, 0, tzinfo=UTC)
KABUL_TIME_TEXT = "2021-08-26T12:00:00Z"


@pytest.fixture
def fixtures_dir() -> Path:
    """Return the path to the test fixtures directory."""
    return FIXTURES


@pytest.fixture(scope="session")
def stopwords() -> frozenset[str]:
    """The bundled stop-word list."""
    return default_stopwords()


@pytest.fixture(scope="session")
def kabul_corpus(stopwords) -> list[CleanPost]:
    """The cleaned Kabul fixture corpus."""
    return clean_posts(load_posts(FIXTURES / "kabul_posts.jsonl"), stopwords)


@pytest.fixture(scope="session")
def kabul_checker(kabul_corpus) -> CrossChecker:
    """A checker over the Kabul corpus with default settings."""
    return CrossChecker(kabul_corpus)


@pytest.fixture(scope="session")
def kabul_model(kabul_checker) -> RandomForestModel:
    """A forest trained on the Kabul fixture claims."""
    model, _ = train_pipeline(load_claims(FIXTURES / "kabul_claims.jsonl"), kabul_checker)
    return model


@pytest.fixture(scope="session")
def kabul_files(tmp_path_factory, kabul_corpus, kabul_model) -> dict[str, Path]:
    """A corpus store and a model file on disk, for CLI tests."""
    root = tmp_path_factory.mktemp("kabul")
    store, model = root / "store.jsonl", root / "model.json"
    save_store(kabul_corpus, store)
    save_model(kabul_model, model)
    return {"store": store, "model": model, "root": root}


@pytest.fixture(scope="session")
def synthetic() -> SyntheticData:
    """The seeded synthetic benchmark."""
    return generate(seed=0)


@pytest.fixture(scope="session")
def synthetic_checker(synthetic, stopwords) -> CrossChecker:
    """A checker over the synthetic corpus."""
    return CrossChecker(clean_posts(synthetic.posts, stopwords))


@pytest.fixture
def small_train_config() -> TrainConfig:
    """A quick forest for tests that do not need 100 trees."""
    return TrainConfig(n_trees=15, seed=3)
