"""
End-to-end cross-checking: from a claim and a reliable corpus to a verdict.

A claim is cleaned, the reliable posts of its time window are clustered into stories by their
named entities, the claim is matched to the nearest story, and the forest compares the claim
with that story's most relevant posts. A claim with no usable evidence comes back as
`Unverifiable` instead of a guessed label.
"""

import csv
import logging
import threading

from collections import Counter, OrderedDict
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import asdict, dataclass, field
from datetime import UTC, datetime
from itertools import groupby
from pathlib import Path
from typing import Any, NamedTuple, Self

import numpy as np

from funcy import group_by, lpluck_attr

from crosscheck._utils import derive_rng, dumps, format_rfc3339, parse_rfc3339
from crosscheck.forest import RandomForestModel, TrainConfig, forest_fit, predict
from crosscheck.logger import get_logger
from crosscheck.pipeline._affect import (
    default_emotion_lexicon,
    default_sentiment_lexicon,
    load_emotion_lexicon,
    load_sentiment_lexicon,
)
from crosscheck.pipeline._clustering import (
    KMeansModel,
    MatchedStory,
    ScoredPost,
    StoryClustering,
    assign,
    filter_relevant,
    select_k,
)
from crosscheck.pipeline._config import FeatureConfig
from crosscheck.pipeline._constants import FEATURE_NAMES, WINDOW_CACHE_SIZE
from crosscheck.pipeline._corpus import (
    CleanPost,
    TimeWindow,
    clean_text,
    default_stopwords,
    load_wordlist,
    read_records,
    restrict_sources,
    select_window,
)
from crosscheck.pipeline._embedding import default_vectors, load_vectors
from crosscheck.pipeline._entities import (
    EntityExtractor,
    GazetteerExtractor,
    default_extractor,
    extract_entities,
    load_gazetteer,
)
from crosscheck.pipeline._errors import (
    DuplicateIdError,
    EmptyAfterCleaningError,
    EmptyWindowError,
    IoError,
    NoVerifiableClaimsError,
    ParseError,
    SingleClassDataError,
    SingleClusterError,
    UnverifiableError,
)
from crosscheck.pipeline._features import FeatureResources, FeatureVector, extract_features
from crosscheck.pipeline._types import CLASS_ORDER, Label, UnverifiableReason
from crosscheck.pipeline._vectorizer import SparseVector, TfIdfModel, fit, to_matrix, transform


crosscheck_logger = get_logger("CROSSCHECK", logging.WARNING)

#: Entities listed per cluster in summaries.
TOP_ENTITIES = 10


@dataclass(frozen=True)
class Claim:
    """A claim to check: its text and when it was posted."""

    id: str
    text: str
    timestamp: datetime


@dataclass(frozen=True)
class LabeledClaim(Claim):
    """A claim with its ground-truth label."""

    label: Label


@dataclass(frozen=True)
class ClusterSummary:
    """A story cluster described by size and its heaviest entities."""

    index: int
    size: int
    top_entities: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {"index": self.index, "size": self.size, "top_entities": list(self.top_entities)}


def _evidence_record(scored: ScoredPost) -> dict[str, Any]:
    return {
        "id": scored.post.id,
        "source": scored.post.source,
        "timestamp": format_rfc3339(scored.post.timestamp),
        "text": scored.post.text,
        "cosine": scored.cosine,
    }


@dataclass(frozen=True)
class Verdict:
    """A classified claim with the evidence behind it."""

    claim_id: str
    label: Label
    score: float
    matched_cluster: ClusterSummary
    evidence: tuple[ScoredPost, ...]
    features: FeatureVector

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {
            "status": "verdict",
            "claim_id": self.claim_id,
            "label": str(self.label),
            "score": self.score,
            "matched_cluster": self.matched_cluster.to_dict(),
            "evidence": [_evidence_record(scored) for scored in self.evidence],
            "features": self.features.as_dict(),
            "layout_version": self.features.layout_version,
        }

    def to_json(self) -> str:
        """Indented JSON; equal verdicts give equal bytes."""
        return dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class Unverifiable:
    """A claim the corpus holds no usable evidence for, and the stage that found none."""

    claim_id: str
    reason: UnverifiableReason
    message: str = ""

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {
            "status": "unverifiable",
            "claim_id": self.claim_id,
            "reason": str(self.reason),
            "message": self.message,
        }

    def to_json(self) -> str:
        """Indented JSON."""
        return dumps(self.to_dict(), indent=2)


type Outcome = Verdict | Unverifiable


@dataclass(frozen=True, eq=False)
class WindowAnalysis:
    """
    Everything computed once per time window: the posts, their TF-IDF vectors, and the stories.

    Only posts with a nonzero vector take part in clustering; ``clustered`` holds their positions
    in ``posts``. When there are too few of them to separate, the whole window is one story.
    """

    posts: tuple[CleanPost, ...]
    tfidf: TfIdfModel
    vectors: tuple[SparseVector, ...]
    clustered: tuple[int, ...]
    stories: StoryClustering

    def members(self, cluster: int) -> list[tuple[CleanPost, SparseVector]]:
        """Posts of one story with their vectors, in window order."""
        return [
            (self.posts[self.clustered[i]], self.vectors[self.clustered[i]])
            for i in self.stories.members(cluster)
        ]

    def summary(self, cluster: int) -> ClusterSummary:
        """Size and top entities (by summed TF-IDF weight) of one story."""
        weights: Counter[int] = Counter()
        members = self.members(cluster)
        for _, vector in members:
            for index, weight in vector.pairs:
                weights[index] += weight
        terms = self.tfidf.terms
        ranked = sorted(weights.items(), key=lambda item: (-item[1], terms[item[0]]))
        return ClusterSummary(
            index=cluster,
            size=len(members),
            top_entities=tuple(terms[index] for index, _ in ranked[:TOP_ENTITIES]),
        )

    def summaries(self) -> list[ClusterSummary]:
        """One summary per story."""
        return [self.summary(cluster) for cluster in range(self.stories.k)]


class Evidence(NamedTuple):
    """What a claim is classified from."""

    target: CleanPost
    story: MatchedStory
    cluster: ClusterSummary
    features: FeatureVector


def _single_story(points: np.ndarray, seed: int) -> StoryClustering:
    centroid = points.mean(axis=0, keepdims=True)
    labels = np.zeros(points.shape[0], dtype=np.int64)
    inertia = float(((points - centroid) ** 2).sum())
    model = KMeansModel(k=1, centroids=centroid, labels=labels, inertia=inertia, seed=seed)
    return StoryClustering(model=model, labels=labels, silhouette=0.0)


def load_resources(config: FeatureConfig) -> FeatureResources:
    """Loads the word vectors and lexicons named in ``config``, or the bundled ones."""
    return FeatureResources(
        vectors=load_vectors(config.vectors) if config.vectors else default_vectors(),
        sentiment=(
            load_sentiment_lexicon(config.sentiment_lexicon)
            if config.sentiment_lexicon
            else default_sentiment_lexicon()
        ),
        emotions=(
            load_emotion_lexicon(config.emotion_lexicon)
            if config.emotion_lexicon
            else default_emotion_lexicon()
        ),
    )


class CrossChecker:
    """
    Checks claims against one reliable corpus.

    The corpus, lexicons and vectors are read-only, so claims can be checked from several
    threads. Window analyses are cached by the ids of the posts they cover; claims whose windows
    hold the same posts share one clustering. At most ``cache_size`` analyses are kept, least
    recently used first out.
    """

    def __init__(
        self,
        corpus: Sequence[CleanPost],
        config: FeatureConfig | None = None,
        *,
        stopwords: frozenset[str] | None = None,
        extractor: EntityExtractor | None = None,
        resources: FeatureResources | None = None,
        workers: int = 1,
        cache_size: int = WINDOW_CACHE_SIZE,
    ) -> None:
        if cache_size < 1:
            raise ValueError(f"cache_size must be at least 1, got {cache_size}")
        self.config = config or FeatureConfig()
        self.corpus = tuple(restrict_sources(corpus, self.config.sources))
        self.stopwords = stopwords or (
            load_wordlist(self.config.stopwords) if self.config.stopwords else default_stopwords()
        )
        self.extractor = extractor or (
            GazetteerExtractor(load_gazetteer(self.config.gazetteer))
            if self.config.gazetteer
            else default_extractor()
        )
        self.resources = resources or load_resources(self.config)
        self.workers = workers
        self.cache_size = cache_size
        self._windows: OrderedDict[tuple[str, ...], WindowAnalysis] = OrderedDict()
        self._lock = threading.Lock()

    def clean_claim(self, claim: Claim) -> CleanPost:
        """Cleans a claim the way reliable posts are cleaned; nothing surviving leaves it empty."""
        try:
            cased, norm, tokens = clean_text(claim.text, self.stopwords)
        except EmptyAfterCleaningError:
            cased, norm, tokens = "", "", ()
        return CleanPost(
            id=claim.id,
            source="",
            timestamp=claim.timestamp,
            text=claim.text,
            text_cased=cased,
            text_norm=norm,
            tokens=tokens,
        )

    def window(self, timestamp: datetime) -> WindowAnalysis:
        """
        Analyses the window around ``timestamp``, or returns the cached analysis.

        Raises:
            EmptyWindowError: If no reliable post falls inside the window.
            EmptyVocabularyError: If no post in the window has an entity.
        """
        posts, key = self._window_posts(timestamp)
        with self._lock:
            if (cached := self._windows.get(key)) is not None:
                self._windows.move_to_end(key)
                return cached
        analysis = self._analyse(posts)
        with self._lock:
            self._windows[key] = analysis
            self._windows.move_to_end(key)
            while len(self._windows) > self.cache_size:
                self._windows.popitem(last=False)
        return analysis

    def _window_posts(self, timestamp: datetime) -> tuple[list[CleanPost], tuple[str, ...]]:
        posts = select_window(self.corpus, TimeWindow(timestamp, self.config.radius_days))
        return posts, tuple(post.id for post in posts)

    def _analyse(self, posts: list[CleanPost]) -> WindowAnalysis:
        entity_lists = [extract_entities(post.text_cased, self.extractor) for post in posts]
        tfidf = fit(entity_lists)
        vectors = tuple(transform(tfidf, entities) for entities in entity_lists)
        clustered = tuple(i for i, vector in enumerate(vectors) if not vector.is_zero)
        points = to_matrix([vectors[i] for i in clustered])
        stories: StoryClustering | None = None
        if len(clustered) >= 3 and min(self.config.k_max, len(clustered) - 1) >= self.config.k_min:
            try:
                stories = select_k(
                    points,
                    self.config.k_min,
                    self.config.k_max,
                    self.config.seed,
                    workers=self.workers,
                )
            except SingleClusterError:
                crosscheck_logger.debug("Every k collapsed; treating the window as one story")
        if stories is None:
            stories = _single_story(points, self.config.seed)
        crosscheck_logger.debug(
            "Window of %d posts (%d with entities, %d entities): %d stories",
            len(posts),
            len(clustered),
            tfidf.dim,
            stories.k,
        )
        return WindowAnalysis(tuple(posts), tfidf, vectors, clustered, stories)

    def evidence(self, claim: Claim) -> Evidence:
        """
        Runs every stage up to feature extraction.

        Raises:
            UnverifiableError: From the first stage that finds no evidence.
        """
        target = self.clean_claim(claim)
        analysis = self.window(claim.timestamp)
        target_vec = transform(analysis.tfidf, extract_entities(target.text_cased, self.extractor))
        cluster = assign(analysis.stories, target_vec)
        story = filter_relevant(
            analysis.members(cluster),
            target_vec,
            self.config.m,
            self.config.tau,
            cluster_index=cluster,
        )
        features = extract_features(
            target, story, self.resources, layout_version=self.config.layout_version
        )
        return Evidence(target, story, analysis.summary(cluster), features)

    def check(self, claim: Claim, model: RandomForestModel) -> Outcome:
        """Classifies one claim, or reports the stage that found no evidence."""
        try:
            found = self.evidence(claim)
        except UnverifiableError as exc:
            crosscheck_logger.info("Claim %s is unverifiable: %s", claim.id, exc)
            return Unverifiable(claim.id, exc.reason, str(exc))
        label, score = predict(model, found.features)
        return Verdict(
            claim_id=claim.id,
            label=label,
            score=score,
            matched_cluster=found.cluster,
            evidence=found.story.posts,
            features=found.features,
        )

    def collect(self, claims: Sequence[Claim]) -> dict[str, FeatureVector | UnverifiableError]:
        """
        Features for every claim, keyed by claim id.

        Claims are taken in timestamp order, so claims sharing a window arrive together. Each
        window is analysed once, serially, before its claims are featurized across threads.
        """

        def one(claim: Claim) -> FeatureVector | UnverifiableError:
            try:
                return self.evidence(claim).features
            except UnverifiableError as exc:
                return exc

        def window_key(claim: Claim) -> tuple[str, ...]:
            try:
                return self._window_posts(claim.timestamp)[1]
            except EmptyWindowError:
                return ()

        ordered = sorted(claims, key=lambda claim: claim.timestamp)
        found: dict[str, FeatureVector | UnverifiableError] = {}
        pool = ThreadPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        with pool or nullcontext():
            for _, run in groupby(ordered, key=window_key):
                batch = list(run)
                try:
                    self.window(batch[0].timestamp)
                except UnverifiableError:
                    pass
                results = pool.map(one, batch) if pool else map(one, batch)
                found.update(zip(lpluck_attr("id", batch), results, strict=True))
        return {claim.id: found[claim.id] for claim in claims}


def check_claim(
    text: str,
    timestamp: datetime,
    corpus: Sequence[CleanPost] | CrossChecker,
    model: RandomForestModel,
    config: FeatureConfig | None = None,
    *,
    claim_id: str = "claim",
) -> Outcome:
    """
    Checks one claim against a corpus.

    Args:
        text (str): The claim text.
        timestamp (datetime): When the claim was posted.
        corpus: Cleaned reliable posts, or a ready `CrossChecker`.
        model (RandomForestModel): The trained forest.
        config (FeatureConfig | None): Pipeline settings, when ``corpus`` is a post list.
        claim_id (str): Id echoed in the result.

    Returns:
        Verdict | Unverifiable: The outcome.
    """
    checker = corpus if isinstance(corpus, CrossChecker) else CrossChecker(corpus, config)
    return checker.check(Claim(claim_id, text, timestamp), model)


def cluster_report(checker: CrossChecker, timestamp: datetime) -> dict[str, Any]:
    """
    Describes the stories found in the window around ``timestamp``.

    Raises:
        EmptyWindowError: If no reliable post falls inside the window.
        EmptyVocabularyError: If no post in the window has an entity.
    """
    window = TimeWindow(timestamp, checker.config.radius_days)
    analysis = checker.window(timestamp)
    clusters = []
    for summary in analysis.summaries():
        members = analysis.members(summary.index)
        clusters.append(
            summary.to_dict()
            | {
                "posts": [
                    {
                        "id": post.id,
                        "source": post.source,
                        "timestamp": format_rfc3339(post.timestamp),
                    }
                    for post, _ in members
                ]
            }
        )
    clustered = set(analysis.clustered)
    return {
        "window": {"start": format_rfc3339(window.start), "end": format_rfc3339(window.end)},
        "n_posts": len(analysis.posts),
        "n_clustered": len(analysis.clustered),
        "n_entities": analysis.tfidf.dim,
        "k": analysis.stories.k,
        "silhouette": analysis.stories.silhouette,
        "clusters": clusters,
        "unclustered": [
            post.id for i, post in enumerate(analysis.posts) if i not in clustered
        ],
    }


def balance(dataset: Sequence[LabeledClaim], seed: int = 0) -> list[LabeledClaim]:
    """
    Undersamples the majority class to the minority count, then shuffles.

    Both steps draw from one generator seeded with ``seed``; claims are never altered.

    Raises:
        SingleClassDataError: If only one class is present.

    Examples:
        balance(claims)  # 10 fake / 3 real -> 3 / 3
    """
    by_label = group_by(lambda claim: claim.label, dataset)
    if len(by_label) < 2:
        raise SingleClassDataError("balancing needs both fake and real claims")
    size = min(len(group) for group in by_label.values())
    rng = derive_rng(seed)
    kept: list[LabeledClaim] = []
    for label in CLASS_ORDER:
        group = by_label[label]
        if len(group) > size:
            chosen = np.sort(rng.choice(len(group), size=size, replace=False))
            group = [group[int(i)] for i in chosen]
        kept.extend(group)
    return [kept[int(i)] for i in rng.permutation(len(kept))]


def split_claims(
    claims: Sequence[LabeledClaim], test_fraction: float = 0.2, seed: int = 0
) -> tuple[list[LabeledClaim], list[LabeledClaim]]:
    """
    Seeded stratified split into training and held-out claims, each kept in input order.

    Raises:
        ValueError: If ``test_fraction`` is not strictly between 0 and 1.
    """
    if not 0 < test_fraction < 1:
        raise ValueError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    rng = derive_rng(seed)
    held_out: set[int] = set()
    for label in CLASS_ORDER:
        positions = [i for i, claim in enumerate(claims) if claim.label is label]
        n_test = round(len(positions) * test_fraction)
        held_out.update(positions[int(i)] for i in rng.permutation(len(positions))[:n_test])
    train = [claim for i, claim in enumerate(claims) if i not in held_out]
    test = [claim for i, claim in enumerate(claims) if i in held_out]
    return train, test


def _counts(labels: Iterable[Label]) -> dict[str, int]:
    tally = Counter(labels)
    return {str(label): tally[label] for label in CLASS_ORDER}


@dataclass(frozen=True)
class TrainingReport:
    """What went into a model, and how it fits its own training data."""

    n_input: int
    dropped: dict[str, UnverifiableReason]
    class_counts: dict[str, int]
    balanced_counts: dict[str, int]
    training_accuracy: float
    split_counts: dict[str, int]
    train_config: TrainConfig
    feature_config: FeatureConfig
    test_fraction: float | None = None
    held_out: "Metrics | None" = None

    @property
    def n_verifiable(self) -> int:
        """Claims that produced features."""
        return self.n_input - len(self.dropped)

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {
            "n_input": self.n_input,
            "n_verifiable": self.n_verifiable,
            "dropped": {claim_id: str(reason) for claim_id, reason in self.dropped.items()},
            "class_counts": self.class_counts,
            "balanced_counts": self.balanced_counts,
            "training_accuracy": self.training_accuracy,
            "split_counts": self.split_counts,
            "train_config": asdict(self.train_config),
            "feature_config": self.feature_config.to_dict(),
            "test_fraction": self.test_fraction,
            "held_out": self.held_out.to_dict() if self.held_out else None,
        }


def train_pipeline(
    claims: Sequence[LabeledClaim],
    checker: CrossChecker,
    train_config: TrainConfig | None = None,
) -> tuple[RandomForestModel, TrainingReport]:
    """
    Extracts features for every claim, balances the verifiable ones, and trains the forest.

    Unverifiable claims are dropped and listed in the report with their reason.

    Raises:
        NoVerifiableClaimsError: If no claim is verifiable.
        SingleClassDataError: If the verifiable claims hold one class only.
    """
    train_config = train_config or TrainConfig()
    results = checker.collect(claims)
    dropped = {
        claim_id: result.reason
        for claim_id, result in results.items()
        if isinstance(result, UnverifiableError)
    }
    verifiable = [claim for claim in claims if claim.id not in dropped]
    if not verifiable:
        raise NoVerifiableClaimsError(f"none of the {len(claims)} claims is verifiable")
    if dropped:
        crosscheck_logger.info("Dropped %d unverifiable claims", len(dropped))
    balanced = balance(verifiable, train_config.seed)
    rows = [results[claim.id] for claim in balanced]
    labels = lpluck_attr("label", balanced)
    model = forest_fit(rows, labels, train_config, workers=checker.workers)
    correct = sum(
        predict(model, row)[0] is label for row, label in zip(rows, labels, strict=True)
    )
    report = TrainingReport(
        n_input=len(claims),
        dropped=dropped,
        class_counts=_counts(claim.label for claim in verifiable),
        balanced_counts=_counts(labels),
        training_accuracy=correct / len(balanced),
        split_counts=dict(zip(FEATURE_NAMES, model.split_counts(), strict=True)),
        train_config=train_config,
        feature_config=checker.config,
    )
    return model, report


@dataclass(frozen=True)
class Metrics:
    """
    Confusion counts with fake as the positive class.

    Ratios whose denominator is zero are ``None``. Unverifiable claims are listed apart and are
    not in the counts.
    """

    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0
    unverifiable: dict[str, UnverifiableReason] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Label, Label]], **extra: Any) -> Self:
        """Counts ``(truth, predicted)`` pairs."""
        tally = Counter(
            (truth is Label.FAKE, predicted is Label.FAKE) for truth, predicted in pairs
        )
        return cls(
            tp=tally[True, True],
            fp=tally[False, True],
            fn=tally[True, False],
            tn=tally[False, False],
            **extra,
        )

    @property
    def total(self) -> int:
        """Verifiable claims counted."""
        return self.tp + self.fp + self.fn + self.tn

    @property
    def accuracy(self) -> float | None:
        """``(tp + tn) / total``."""
        return (self.tp + self.tn) / self.total if self.total else None

    @property
    def precision(self) -> float | None:
        """``tp / (tp + fp)``."""
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else None

    @property
    def recall(self) -> float | None:
        """``tp / (tp + fn)``."""
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else None

    @property
    def f1(self) -> float | None:
        """Harmonic mean of precision and recall."""
        precision, recall = self.precision, self.recall
        if precision is None or recall is None or precision + recall == 0:
            return None
        return 2 * precision * recall / (precision + recall)

    def to_dict(self) -> dict[str, Any]:
        """JSON form; undefined ratios are ``null``."""
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "confusion": {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn},
            "n_verifiable": self.total,
            "unverifiable": {
                claim_id: str(reason) for claim_id, reason in self.unverifiable.items()
            },
        }


def evaluate(
    model: RandomForestModel,
    claims: Sequence[LabeledClaim],
    checker: CrossChecker,
    *,
    training_ids: Iterable[str] = (),
) -> Metrics:
    """
    Scores the model on labeled claims.

    Raises:
        NoVerifiableClaimsError: If no claim is verifiable.
    """
    if overlap := sorted({claim.id for claim in claims} & set(training_ids)):
        crosscheck_logger.warning(
            "%d evaluation claims were also used for training: %s",
            len(overlap),
            ", ".join(overlap[:5]),
        )
    results = checker.collect(claims)
    unverifiable: dict[str, UnverifiableReason] = {}
    pairs: list[tuple[Label, Label]] = []
    for claim in claims:
        result = results[claim.id]
        if isinstance(result, UnverifiableError):
            unverifiable[claim.id] = result.reason
        else:
            pairs.append((claim.label, predict(model, result)[0]))
    if not pairs:
        raise NoVerifiableClaimsError(f"none of the {len(claims)} claims is verifiable")
    return Metrics.from_pairs(pairs, unverifiable=unverifiable)


def _labeled_claim(record: Any, line: int) -> LabeledClaim:
    if not isinstance(record, dict):
        raise ParseError("expected a JSON object", line)
    if missing := [name for name in ("id", "text", "timestamp", "label") if name not in record]:
        raise ParseError(f"missing field(s): {', '.join(missing)}", line)
    if not isinstance(record["id"], str) or not record["id"]:
        raise ParseError("id must be a nonempty string", line)
    if not isinstance(record["text"], str):
        raise ParseError("text must be a string", line)
    try:
        timestamp = parse_rfc3339(record["timestamp"])
        label = Label.from_str(str(record["label"]))
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), line) from exc
    return LabeledClaim(id=record["id"], text=record["text"], timestamp=timestamp, label=label)


def load_claims(path: Path) -> list[LabeledClaim]:
    """
    Loads labeled claims, one ``{id, text, timestamp, label}`` object per line.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a line is malformed.
        DuplicateIdError: If an id repeats.
    """
    claims: list[LabeledClaim] = []
    seen: set[str] = set()
    for number, record in read_records(path):
        claim = _labeled_claim(record, number)
        if claim.id in seen:
            raise DuplicateIdError(f"duplicate claim id {claim.id!r}", number)
        seen.add(claim.id)
        claims.append(claim)
    return claims


_CSV_DATE_FORMATS = ("%B %d, %Y", "%b %d, %Y", "%d-%b-%y", "%Y-%m-%d")


def _csv_date(value: str) -> datetime:
    cleaned = " ".join(value.split())
    for pattern in _CSV_DATE_FORMATS:
        try:
            return datetime.strptime(cleaned, pattern).replace(tzinfo=UTC)
        except ValueError:
            continue
    raise ValueError(f"unrecognized date {value!r}")


def load_fake_real_csv(path: Path) -> list[LabeledClaim]:
    """
    Loads a fake/real news CSV with ``title``, ``date`` and ``label`` columns.

    Titles become claim text; dates such as ``December 31, 2017`` become midnight UTC. Other
    columns (``text``, ``subject``) are ignored. Ids are ``row-<line>`` unless an ``id`` column
    is present.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a column is missing or a row is malformed.
    """
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            if missing := {"title", "date", "label"} - set(reader.fieldnames or ()):
                raise ParseError(f"missing column(s): {', '.join(sorted(missing))}", 1)
            claims = []
            for row in reader:
                line = reader.line_num
                try:
                    claims.append(
                        LabeledClaim(
                            id=row.get("id") or f"row-{line}",
                            text=row["title"].strip(),
                            timestamp=_csv_date(row["date"]),
                            label=Label.from_str(row["label"]),
                        )
                    )
                except (AttributeError, ValueError) as exc:
                    raise ParseError(str(exc), line) from exc
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return claims


def claim_to_record(claim: LabeledClaim) -> dict[str, str]:
    """The claims-file form of a labeled claim."""
    return {
        "id": claim.id,
        "text": claim.text,
        "timestamp": format_rfc3339(claim.timestamp),
        "label": str(claim.label),
    }
