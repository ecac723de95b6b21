"""
Lexicon sentiment and five-way emotion profiles.

Sentiment is the mean weight of the lexicon words a text contains; emotion is the share of
lexicon hits per emotion. Both use exactly-rounded sums, so token order never changes a bit.
"""

import math

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Protocol

from crosscheck._utils import data_path, iter_text_lines
from crosscheck.pipeline._errors import EmptyReliableSetError, IoError, ParseError
from crosscheck.pipeline._types import Emotion


class SentimentAnalyzer(Protocol):
    """Anything that scores cleaned lowercase tokens in ``[-1, 1]``."""

    def score(self, tokens: Sequence[str]) -> float:
        """Score one text."""
        ...


@dataclass(frozen=True)
class SentimentLexicon:
    """Word weights in ``[-1, 1]``."""

    weights: dict[str, float]

    def score(self, tokens: Sequence[str]) -> float:
        """Mean weight of the matched tokens, clamped to ``[-1, 1]``; 0 with no match."""
        hits = [self.weights[token] for token in tokens if token in self.weights]
        if not hits:
            return 0.0
        return max(-1.0, min(1.0, math.fsum(hits) / len(hits)))


@dataclass(frozen=True)
class EmotionLexicon:
    """One emotion per word."""

    labels: dict[str, Emotion]


class EmotionVector(NamedTuple):
    """Share of lexicon hits per emotion; all zero when nothing hit."""

    happy: float = 0.0
    angry: float = 0.0
    sad: float = 0.0
    surprise: float = 0.0
    fear: float = 0.0

    @property
    def is_empty(self) -> bool:
        """True when no lexicon word was found."""
        return not any(self)


_EMOTION_FIELDS: dict[Emotion, str] = {
    Emotion.HAPPY: "happy",
    Emotion.ANGRY: "angry",
    Emotion.SAD: "sad",
    Emotion.SURPRISE: "surprise",
    Emotion.FEAR: "fear",
}


def _tsv_rows(path: Path) -> list[tuple[int, str, str]]:
    try:
        lines = list(iter_text_lines(path))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    rows = []
    for number, line in lines:
        if line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise ParseError("expected word<TAB>value", number)
        rows.append((number, parts[0].strip().lower(), parts[1].strip()))
    return rows


def load_sentiment_lexicon(path: Path) -> SentimentLexicon:
    """
    Loads a ``word<TAB>weight`` file.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a weight is not a finite number in ``[-1, 1]``.
    """
    weights: dict[str, float] = {}
    for number, word, value in _tsv_rows(path):
        try:
            weight = float(value)
        except ValueError as exc:
            raise ParseError(f"bad weight for {word!r}", number) from exc
        if not math.isfinite(weight) or not -1.0 <= weight <= 1.0:
            raise ParseError(f"weight for {word!r} must lie in [-1, 1]", number)
        weights[word] = weight
    return SentimentLexicon(weights)


def load_emotion_lexicon(path: Path) -> EmotionLexicon:
    """
    Loads a ``word<TAB>label`` file; labels are case-insensitive.

    Raises:
        IoError: If the file cannot be read.
        ParseError: On an unknown label, or a word listed under two labels.
    """
    labels: dict[str, Emotion] = {}
    for number, word, value in _tsv_rows(path):
        try:
            emotion = Emotion.from_str(value)
        except ValueError as exc:
            raise ParseError(str(exc), number) from exc
        if labels.get(word, emotion) is not emotion:
            raise ParseError(f"{word!r} is listed as both {labels[word]} and {emotion}", number)
        labels[word] = emotion
    return EmotionLexicon(labels)


def default_sentiment_lexicon() -> SentimentLexicon:
    """The bundled sentiment lexicon."""
    return load_sentiment_lexicon(data_path("sentiment.tsv"))


def default_emotion_lexicon() -> EmotionLexicon:
    """The bundled emotion lexicon."""
    return load_emotion_lexicon(data_path("emotion.tsv"))


def sentiment(tokens: Sequence[str], lexicon: SentimentAnalyzer) -> float:
    """
    Sentiment of a token list in ``[-1, 1]``; 0 (neutral) when no lexicon word occurs.

    Examples:
        sentiment(["good"], SentimentLexicon({"good": 0.5}))  # 0.5
    """
    return lexicon.score(tokens)


def sentiment_diff(target_score: float, reliable_scores: Sequence[float]) -> float:
    """
    Mean reliable sentiment minus the claim's sentiment.

    Raises:
        EmptyReliableSetError: If there are no reliable scores.
    """
    if not reliable_scores:
        raise EmptyReliableSetError("no reliable sentiment scores to compare against")
    return math.fsum(reliable_scores) / len(reliable_scores) - target_score


def emotion(tokens: Sequence[str], lexicon: EmotionLexicon) -> EmotionVector:
    """Emotion profile of a token list: hit counts divided by total hits."""
    hits = Counter(lexicon.labels[token] for token in tokens if token in lexicon.labels)
    total = sum(hits.values())
    if not total:
        return EmotionVector()
    return EmotionVector(**{_EMOTION_FIELDS[key]: count / total for key, count in hits.items()})
