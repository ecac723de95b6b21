"""
The 12-wide feature vector the forest classifies.

Layout (``FEATURE_NAMES``): mean semantic similarity to the story posts, sentiment difference,
the claim's emotion profile, then the story's mean emotion profile.
"""

import math

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from crosscheck.pipeline._affect import (
    EmotionLexicon,
    EmotionVector,
    SentimentAnalyzer,
    emotion,
    sentiment,
    sentiment_diff,
)
from crosscheck.pipeline._clustering import MatchedStory
from crosscheck.pipeline._constants import FEATURE_LAYOUT_VERSION, FEATURE_NAMES
from crosscheck.pipeline._corpus import CleanPost
from crosscheck.pipeline._embedding import WordVectorStore, embed, semantic_similarity
from crosscheck.pipeline._errors import EmptyStoryError


@dataclass(frozen=True)
class FeatureVector:
    """Twelve floats tagged with the layout version they follow."""

    values: tuple[float, ...]
    layout_version: str = FEATURE_LAYOUT_VERSION

    def __post_init__(self) -> None:
        if len(self.values) != len(FEATURE_NAMES):
            raise ValueError(f"expected {len(FEATURE_NAMES)} features, got {len(self.values)}")

    @property
    def semantic_sim(self) -> float:
        """Mean cosine between the claim's and each story post's embedding."""
        return self.values[0]

    @property
    def sentiment_diff(self) -> float:
        """Mean story sentiment minus the claim's sentiment."""
        return self.values[1]

    @property
    def target_emotion(self) -> EmotionVector:
        """The claim's emotion profile."""
        return EmotionVector(*self.values[2:7])

    @property
    def story_emotion(self) -> EmotionVector:
        """The story posts' mean emotion profile."""
        return EmotionVector(*self.values[7:12])

    def as_array(self) -> np.ndarray:
        """The features as a float array."""
        return np.array(self.values, dtype=np.float64)

    def as_dict(self) -> dict[str, float]:
        """Feature name to value."""
        return dict(zip(FEATURE_NAMES, self.values, strict=True))


@dataclass(frozen=True)
class FeatureResources:
    """The read-only stores and lexicons feature extraction consults."""

    vectors: WordVectorStore
    sentiment: SentimentAnalyzer
    emotions: EmotionLexicon


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def extract_features(
    target: CleanPost,
    story: MatchedStory,
    resources: FeatureResources,
    *,
    layout_version: str = FEATURE_LAYOUT_VERSION,
) -> FeatureVector:
    """
    Compares the claim with its matched story.

    Every story-side quantity is an arithmetic mean over the story posts, so the result does
    not depend on their order.

    Raises:
        EmptyStoryError: If the story has no posts.
    """
    if not story.posts:
        raise EmptyStoryError("the matched story has no posts")
    reliable = [scored.post for scored in story.posts]

    target_embedding = embed(target.tokens, resources.vectors)
    semantic = _mean(
        [
            semantic_similarity(target_embedding, embed(post.tokens, resources.vectors))
            for post in reliable
        ]
    )
    difference = sentiment_diff(
        sentiment(target.tokens, resources.sentiment),
        [sentiment(post.tokens, resources.sentiment) for post in reliable],
    )
    target_emotion = emotion(target.tokens, resources.emotions)
    story_profiles = [emotion(post.tokens, resources.emotions) for post in reliable]
    story_emotion = tuple(_mean(column) for column in zip(*story_profiles, strict=True))
    return FeatureVector((semantic, difference, *target_emotion, *story_emotion), layout_version)
