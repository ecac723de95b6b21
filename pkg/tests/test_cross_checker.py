"""End-to-end tests: checking claims, balancing, training and evaluation."""

from collections import Counter
from datetime import UTC, datetime

import pytest

from crosscheck.cross_checker import (
    Claim,
    CrossChecker,
    LabeledClaim,
    Metrics,
    Unverifiable,
    Verdict,
    balance,
    check_claim,
    cluster_report,
    evaluate,
    load_claims,
    load_fake_real_csv,
    split_claims,
    train_pipeline,
)
from crosscheck.pipeline import (
    FEATURE_NAMES,
    DuplicateIdError,
    FeatureConfig,
    IoError,
    Label,
    LayoutMismatchError,
    NoVerifiableClaimsError,
    ParseError,
    RawPost,
    SingleClassDataError,
    UnverifiableReason,
    clean_post,
)
from tests.conftest import FIXTURES, KABUL_CLAIM, KABUL_TIME


ATTACK_POSTS = {"attack-cnn", "attack-nyt", "attack-ap", "attack-bbc", "attack-wapo"}
# attack-cnn only names "Kabul's airport", which cleans to "Kabuls airport"
ATTACK_EVIDENCE = ATTACK_POSTS - {"attack-cnn"}


def _claims(fake: int, real: int) -> list[LabeledClaim]:
    when = datetime(2021, 8, 26, tzinfo=UTC)
    return [
        LabeledClaim(f"{label}-{i}", "text", when, label)
        for label, count in ((Label.FAKE, fake), (Label.REAL, real))
        for i in range(count)
    ]


def test_kabul_claim_is_fake(kabul_checker, kabul_model):
    """The claim denying the deaths is flagged, with the attack coverage as evidence."""
    outcome = kabul_checker.check(Claim("kabul", KABUL_CLAIM, KABUL_TIME), kabul_model)
    assert isinstance(outcome, Verdict)
    assert outcome.label is Label.FAKE
    assert outcome.score > 0.5
    assert {scored.post.id for scored in outcome.evidence} == ATTACK_EVIDENCE
    assert outcome.evidence[0].post.id == "attack-bbc"
    assert "kabul" in outcome.matched_cluster.top_entities
    assert outcome.matched_cluster.size == 5


def test_kabul_evidence_is_ranked(kabul_checker):
    """Evidence comes most similar first and every cosine reaches tau."""
    found = kabul_checker.evidence(Claim("kabul", KABUL_CLAIM, KABUL_TIME))
    cosines = [scored.cosine for scored in found.story.posts]
    assert cosines == sorted(cosines, reverse=True)
    assert min(cosines) >= kabul_checker.config.tau
    assert found.features.target_emotion.sad == 0.5


@pytest.mark.parametrize(
    ("text", "when", "reason"),
    [
        (KABUL_CLAIM, datetime(2021, 9, 30, tzinfo=UTC), UnverifiableReason.EMPTY_WINDOW),
        (
            KABUL_CLAIM,
            datetime(2021, 10, 10, 12, tzinfo=UTC),
            UnverifiableReason.EMPTY_VOCABULARY,
        ),
        ("Madrid fans cheer a title win", KABUL_TIME, UnverifiableReason.ZERO_TARGET_VECTOR),
    ],
    ids=["empty-window", "empty-vocabulary", "zero-target"],
)
def test_unverifiable_claims(kabul_checker, kabul_model, text, when, reason):
    """Each stage that finds no evidence is reported instead of a label."""
    outcome = kabul_checker.check(Claim("c", text, when), kabul_model)
    assert isinstance(outcome, Unverifiable)
    assert outcome.reason is reason
    assert outcome.to_dict()["status"] == "unverifiable"


def test_no_relevant_story(kabul_corpus, kabul_model):
    """A threshold no post reaches leaves the claim unverifiable."""
    checker = CrossChecker(kabul_corpus, FeatureConfig(tau=0.95))
    outcome = checker.check(Claim("c", KABUL_CLAIM, KABUL_TIME), kabul_model)
    assert isinstance(outcome, Unverifiable)
    assert outcome.reason is UnverifiableReason.NO_RELEVANT_STORY


def test_empty_claim_is_unverifiable(kabul_checker, kabul_model):
    """A claim that cleans to nothing has no entities to match."""
    outcome = kabul_checker.check(Claim("c", "@someone https://t.co/x", KABUL_TIME), kabul_model)
    assert isinstance(outcome, Unverifiable)
    assert outcome.reason is UnverifiableReason.ZERO_TARGET_VECTOR


def test_verdicts_are_byte_identical(kabul_corpus, kabul_model):
    """Fresh checkers give the same verdict JSON."""
    first = check_claim(KABUL_CLAIM, KABUL_TIME, kabul_corpus, kabul_model)
    second = check_claim(KABUL_CLAIM, KABUL_TIME, CrossChecker(kabul_corpus), kabul_model)
    assert first.to_json() == second.to_json()
    assert first.to_dict()["claim_id"] == "claim"


def test_layout_mismatch_is_a_hard_error(kabul_corpus, kabul_model):
    """Features built for another layout cannot be classified."""
    checker = CrossChecker(kabul_corpus, FeatureConfig(layout_version="crosscheck-features/0"))
    with pytest.raises(LayoutMismatchError):
        checker.check(Claim("c", KABUL_CLAIM, KABUL_TIME), kabul_model)


def test_window_analysis_is_cached(kabul_checker):
    """Claims whose windows cover the same posts share one analysis."""
    first = kabul_checker.window(KABUL_TIME)
    assert kabul_checker.window(datetime(2021, 8, 26, 12, 5, tzinfo=UTC)) is first


def test_window_cache_evicts_least_recently_used(kabul_corpus):
    """A full cache drops the window used longest ago and recomputes it on demand."""
    early, late = datetime(2021, 8, 22, tzinfo=UTC), datetime(2021, 8, 29, tzinfo=UTC)
    checker = CrossChecker(kabul_corpus, cache_size=2)
    attack = checker.window(KABUL_TIME)
    before = checker.window(early)
    assert checker.window(KABUL_TIME) is attack
    checker.window(late)
    again = checker.window(early)
    assert again is not before
    assert again.stories.k == before.stories.k
    assert checker.window(KABUL_TIME) is not attack
    assert len(checker._windows) == 2


def test_cache_size_validated(kabul_corpus):
    with pytest.raises(ValueError, match="cache_size"):
        CrossChecker(kabul_corpus, cache_size=0)


@pytest.mark.parametrize("workers", [1, 3])
def test_collect_with_a_tiny_cache(kabul_corpus, kabul_checker, workers):
    """Claims are grouped by window, so one cached window is enough for identical results."""
    claims = load_claims(FIXTURES / "kabul_claims.jsonl")[::-1] + [
        Claim("early", "Evacuation flights leave Kabul.", datetime(2021, 8, 22, tzinfo=UTC)),
        Claim("empty", "Evacuation flights leave Kabul.", datetime(2021, 9, 30, tzinfo=UTC)),
    ]
    expected = kabul_checker.collect(claims)
    found = CrossChecker(kabul_corpus, cache_size=1, workers=workers).collect(claims)
    assert list(found) == [claim.id for claim in claims]
    for claim_id, result in found.items():
        if isinstance(expected[claim_id], Exception):
            assert type(result) is type(expected[claim_id])
        else:
            assert result == expected[claim_id]
    assert found["empty"].reason is UnverifiableReason.EMPTY_WINDOW


def test_sources_restrict_the_corpus(kabul_corpus):
    """Only configured sources are consulted."""
    checker = CrossChecker(kabul_corpus, FeatureConfig(sources=("ap",)))
    assert {post.source for post in checker.corpus} == {"AP"}


def test_small_window_is_one_story(kabul_model, stopwords):
    """Two posts with entities are too few to cluster, so they form a single story."""
    text = "Marines were killed in a blast at Kabul Airport."
    corpus = [
        clean_post(RawPost(f"p{i}", "AP", KABUL_TIME, text), stopwords) for i in range(2)
    ]
    checker = CrossChecker(corpus)
    analysis = checker.window(KABUL_TIME)
    assert analysis.stories.k == 1
    assert analysis.stories.silhouette == 0.0
    outcome = checker.check(Claim("c", text, KABUL_TIME), kabul_model)
    assert isinstance(outcome, Verdict)
    assert outcome.matched_cluster.size == 2


def test_cluster_report(kabul_checker):
    """The Kabul week has five stories and every post is clustered."""
    report = cluster_report(kabul_checker, KABUL_TIME)
    assert report["window"] == {"start": "2021-08-23T12:00:00Z", "end": "2021-08-29T12:00:00Z"}
    assert report["n_posts"] == report["n_clustered"] == 21
    assert report["k"] == len(report["clusters"]) == 5
    assert report["unclustered"] == []
    assert sum(cluster["size"] for cluster in report["clusters"]) == 21
    assert all(len(cluster["top_entities"]) <= 10 for cluster in report["clusters"])


@pytest.mark.parametrize(("fake", "real"), [(1921, 2764), (10, 3), (4, 4)])
def test_balance_counts(fake, real):
    """Both classes end at the minority count."""
    balanced = balance(_claims(fake, real), seed=0)
    counts = Counter(claim.label for claim in balanced)
    assert counts[Label.FAKE] == counts[Label.REAL] == min(fake, real)


def test_balance_keeps_claims_intact():
    """Balancing picks a subset and never alters a claim."""
    claims = _claims(10, 3)
    balanced = balance(claims, seed=4)
    assert set(balanced) <= set(claims)
    assert len(set(balanced)) == len(balanced)
    assert balance(claims, seed=4) == balanced


def test_balance_already_balanced():
    """Balanced input keeps every claim."""
    claims = _claims(4, 4)
    assert sorted(balance(claims), key=lambda c: c.id) == sorted(claims, key=lambda c: c.id)


def test_balance_single_class():
    """Balancing needs both classes."""
    with pytest.raises(SingleClassDataError):
        balance(_claims(3, 0))


def test_split_claims_is_stratified():
    """Each class contributes its share to the held-out set."""
    claims = _claims(50, 30)
    train, test = split_claims(claims, 0.2, seed=1)
    assert Counter(claim.label for claim in test) == {Label.FAKE: 10, Label.REAL: 6}
    assert sorted(train + test, key=claims.index) == claims
    assert not set(train) & set(test)
    assert split_claims(claims, 0.2, seed=1) == (train, test)


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1])
def test_split_fraction_validated(fraction):
    """The held-out fraction lies strictly between 0 and 1."""
    with pytest.raises(ValueError):
        split_claims(_claims(2, 2), fraction)


def test_training_report(kabul_checker, small_train_config):
    """Every input claim is either used or listed as dropped."""
    claims = load_claims(FIXTURES / "kabul_claims.jsonl")
    claims.append(
        LabeledClaim("late", KABUL_CLAIM, datetime(2021, 9, 30, tzinfo=UTC), Label.FAKE)
    )
    _, report = train_pipeline(claims, kabul_checker, small_train_config)
    assert report.n_input == len(claims)
    assert report.n_verifiable + len(report.dropped) == report.n_input
    assert report.dropped["late"] is UnverifiableReason.EMPTY_WINDOW
    balanced = report.balanced_counts
    assert balanced["fake"] == balanced["real"] == min(report.class_counts.values())
    data = report.to_dict()
    assert data["train_config"]["n_trees"] == 15
    assert list(data["split_counts"]) == list(FEATURE_NAMES)
    assert 0.0 <= report.training_accuracy <= 1.0


def test_no_verifiable_claims(kabul_checker, small_train_config):
    """Training on claims outside the corpus fails."""
    when = datetime(2021, 9, 30, tzinfo=UTC)
    claims = [
        LabeledClaim("a", KABUL_CLAIM, when, Label.FAKE),
        LabeledClaim("b", KABUL_CLAIM, when, Label.REAL),
    ]
    with pytest.raises(NoVerifiableClaimsError):
        train_pipeline(claims, kabul_checker, small_train_config)


def test_metrics_ratios():
    """Fake is the positive class."""
    metrics = Metrics(tp=7, fp=3, fn=3, tn=7)
    assert metrics.accuracy == pytest.approx(0.7)
    assert metrics.precision == pytest.approx(0.7)
    assert metrics.recall == pytest.approx(0.7)
    assert metrics.f1 == pytest.approx(0.7)
    assert metrics.to_dict()["confusion"] == {"tp": 7, "fp": 3, "fn": 3, "tn": 7}


def test_metrics_undefined_ratios():
    """Zero denominators give no value rather than a guess."""
    metrics = Metrics(tn=4)
    assert metrics.accuracy == 1.0
    assert metrics.precision is None
    assert metrics.recall is None
    assert metrics.f1 is None


def test_metrics_from_pairs():
    """Pairs of truth and prediction are tallied."""
    pairs = [(Label.FAKE, Label.FAKE), (Label.REAL, Label.FAKE), (Label.FAKE, Label.REAL)]
    assert Metrics.from_pairs(pairs) == Metrics(tp=1, fp=1, fn=1, tn=0)


def test_evaluate_on_training_claims(kabul_checker, kabul_model):
    """Every claim is either scored or listed as unverifiable."""
    claims = load_claims(FIXTURES / "kabul_claims.jsonl")
    metrics = evaluate(kabul_model, claims, kabul_checker, training_ids=[c.id for c in claims])
    assert metrics.total + len(metrics.unverifiable) == len(claims)
    assert metrics.accuracy is not None
    assert metrics.accuracy >= 0.9


def test_load_claims_rejects_duplicates(tmp_path):
    """Claim ids are unique."""
    line = '{"id":"a","text":"x","timestamp":"2021-08-26T12:00:00Z","label":"fake"}'
    path = tmp_path / "claims.jsonl"
    path.write_text(f"{line}\n{line}\n", encoding="utf-8")
    with pytest.raises(DuplicateIdError):
        load_claims(path)


def test_load_claims_rejects_bad_labels(tmp_path):
    """Labels are fake or real."""
    path = tmp_path / "claims.jsonl"
    path.write_text(
        '{"id":"a","text":"x","timestamp":"2021-08-26T12:00:00Z","label":"maybe"}\n',
        encoding="utf-8",
    )
    with pytest.raises(ParseError) as excinfo:
        load_claims(path)
    assert excinfo.value.line == 1


def test_load_fake_real_csv(tmp_path):
    """Titles become claims dated at midnight UTC."""
    path = tmp_path / "news.csv"
    path.write_text(
        "title,text,subject,date,label\n"
        '"Marines safe in Kabul",body,news,"August 26, 2021",FAKE\n'
        "Ida nears Louisiana,body,news,2021-08-28,real\n",
        encoding="utf-8",
    )
    claims = load_fake_real_csv(path)
    assert [claim.text for claim in claims] == ["Marines safe in Kabul", "Ida nears Louisiana"]
    assert claims[0].timestamp == datetime(2021, 8, 26, tzinfo=UTC)
    assert [claim.label for claim in claims] == [Label.FAKE, Label.REAL]
    assert claims[0].id == "row-2"


def test_load_fake_real_csv_errors(tmp_path):
    """Missing columns and unreadable dates are parse errors; missing files IoError."""
    path = tmp_path / "news.csv"
    path.write_text("title,label\nx,fake\n", encoding="utf-8")
    with pytest.raises(ParseError, match="date"):
        load_fake_real_csv(path)
    path.write_text("title,date,label\nx,someday,fake\n", encoding="utf-8")
    with pytest.raises(ParseError, match="someday"):
        load_fake_real_csv(path)
    with pytest.raises(IoError):
        load_fake_real_csv(tmp_path / "absent.csv")


def test_config_from_yaml(tmp_path):
    """YAML settings override the defaults."""
    path = tmp_path / "config.yaml"
    path.write_text("m: 3\ntau: 0.2\nsources: [AP, BBCWorld]\n", encoding="utf-8")
    config = FeatureConfig.from_yaml(path)
    assert (config.m, config.tau, config.radius_days) == (3, 0.2, 3)
    assert config.sources == ("AP", "BBCWorld")
    assert config.to_dict()["sources"] == ["AP", "BBCWorld"]


@pytest.mark.parametrize(
    ("content", "error"),
    [("bogus: 1\n", ValueError), ("- a\n- b\n", ParseError), ("m: 0\n", ValueError)],
)
def test_bad_config(tmp_path, content, error):
    """Unknown keys, non-mappings and invalid values are rejected."""
    path = tmp_path / "config.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(error):
        FeatureConfig.from_yaml(path)


def test_empty_config_is_default(tmp_path):
    """An empty file means defaults."""
    path = tmp_path / "config.yaml"
    path.write_text("", encoding="utf-8")
    assert FeatureConfig.from_yaml(path) == FeatureConfig()
