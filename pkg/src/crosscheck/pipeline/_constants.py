"""Constants for the cross-checking pipeline."""

import re

from re import Pattern
from typing import ClassVar


class Patterns:
    """
    The regexes the cleaning rules run, in the order they run.

    Emails go before handles, since ``name@host.org`` would otherwise lose only its ``@host``.
    """

    url: ClassVar[Pattern[str]] = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
    email: ClassVar[Pattern[str]] = re.compile(r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+")
    handle: ClassVar[Pattern[str]] = re.compile(r"@\w+")
    # everything that is neither a word character, whitespace nor a hyphen; plus underscores
    punctuation: ClassVar[Pattern[str]] = re.compile(r"[^\w\s-]|_")
    # hyphens not sitting between two word characters
    loose_hyphen: ClassVar[Pattern[str]] = re.compile(r"-(?!\w)|(?<!\w)-")

    removal_order: ClassVar[tuple[Pattern[str], ...]] = (url, email, handle)


REPLACEMENT_CHARACTER = "\ufffd"

#: Days on each side of the claim's timestamp.
DEFAULT_RADIUS_DAYS = 3

#: Reliable posts kept per matched story, and the minimum cosine to keep one.
DEFAULT_MAX_EVIDENCE = 5
DEFAULT_RELEVANCE_THRESHOLD = 0.1

DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 10

KMEANS_RESTARTS = 10
KMEANS_MAX_ITER = 100
KMEANS_TOLERANCE = 1e-4

#: Windows with at most this many clustered posts are partitioned exhaustively instead of by
#: k-means (there are 4140 ways to partition 8 posts).
EXACT_PARTITION_MAX_POINTS = 8

#: Window analyses a checker keeps before evicting the least recently used.
WINDOW_CACHE_SIZE = 64

#: Minimum capitalized-token length for the run rule of the default entity extractor.
DEFAULT_MIN_TOKEN_LEN = 2

#: Version tag of the 12-wide feature layout; models record the tag they were trained on.
FEATURE_LAYOUT_VERSION = "crosscheck-features/1"

FEATURE_NAMES: tuple[str, ...] = (
    "semantic_sim",
    "sentiment_diff",
    "target_happy",
    "target_angry",
    "target_sad",
    "target_surprise",
    "target_fear",
    "story_happy",
    "story_angry",
    "story_sad",
    "story_surprise",
    "story_fear",
)

MODEL_SCHEMA = "crosscheck-rf/1"
