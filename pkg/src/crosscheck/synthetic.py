"""
Seeded synthetic benchmark: five fictional stories reported by reliable posts, and claims that
either echo a story's tone or flip it.

Every post of a story names the same two-word organization and nothing else capitalized, so the
window separates cleanly into five stories. Tone words come from the bundled lexicons: aligned
claims reuse their story's tone (real), contradicting claims use the opposite tone (fake). Filler
words appear in no lexicon and no vector file, so they only change the surface text.
"""

import logging

from dataclasses import dataclass
from datetime import UTC, datetime, timedelta
from pathlib import Path

import numpy as np

from crosscheck._utils import derive_rng, write_jsonl
from crosscheck.cross_checker import LabeledClaim, claim_to_record
from crosscheck.logger import get_logger
from crosscheck.pipeline._corpus import RawPost
from crosscheck.pipeline._types import Label


synthetic_logger = get_logger("SYNTHETIC", logging.WARNING)

POSTS_PER_STORY = 10
CLAIMS_PER_STORY = 40
CENTER = datetime(2024, 5, 15, 12, 0, tzinfo=UTC)

#: Posts spread over this many days either side of ``CENTER``; claims over half of it, so
#: every claim's three-day window covers every post.
POST_SPREAD_DAYS = 2
CLAIM_SPREAD_DAYS = 1

NEGATIVE_TONE = ("tragic", "grief", "destroyed", "deadly", "panic", "threat")
POSITIVE_TONE = ("safe", "relief", "celebrate", "unharmed", "thriving", "glad", "joy")
FILLER = (
    "update",
    "reported",
    "morning",
    "residents",
    "statement",
    "local",
    "crews",
    "latest",
    "week",
    "region",
    "spokesperson",
    "confirmed",
    "evening",
)
SOURCES = ("ReliableWire", "DailyLedger", "CityDesk")


@dataclass(frozen=True)
class SyntheticStory:
    """A fictional event: who it is about, what it is about, and how it is reported."""

    name: str
    topic: tuple[str, ...]
    negative: bool

    @property
    def tone(self) -> tuple[str, ...]:
        """Words the reliable posts use."""
        return NEGATIVE_TONE if self.negative else POSITIVE_TONE

    @property
    def flipped(self) -> tuple[str, ...]:
        """Words a contradicting claim uses."""
        return POSITIVE_TONE if self.negative else NEGATIVE_TONE


STORIES = (
    SyntheticStory("Norvale Authority", ("dam", "reservoir", "spillway"), negative=True),
    SyntheticStory("Kestrel Port", ("harbor", "cargo", "ships"), negative=False),
    SyntheticStory("Tamsin Growers", ("harvest", "orchards", "farmers"), negative=True),
    SyntheticStory("Orin Arena", ("stadium", "fans", "tournament"), negative=False),
    SyntheticStory("Selby Council", ("bridge", "traffic", "commuters"), negative=True),
)


@dataclass(frozen=True)
class SyntheticData:
    """A generated corpus and its labeled claims."""

    posts: tuple[RawPost, ...]
    claims: tuple[LabeledClaim, ...]
    seed: int


def _pick(rng: np.random.Generator, words: tuple[str, ...], count: int) -> list[str]:
    return [words[int(i)] for i in rng.choice(len(words), size=count, replace=False)]


def _offset(rng: np.random.Generator, spread_days: int) -> timedelta:
    minutes = spread_days * 24 * 60
    return timedelta(minutes=int(rng.integers(-minutes, minutes + 1)))


def _sentence(story: SyntheticStory, rng: np.random.Generator, tone: tuple[str, ...]) -> str:
    words = [*_pick(rng, story.topic, 2), *_pick(rng, tone, 2), *_pick(rng, FILLER, 3)]
    words = [words[int(i)] for i in rng.permutation(len(words))]
    return f"{story.name} {' '.join(words)}"


def generate(seed: int = 0) -> SyntheticData:
    """
    Builds the benchmark corpus (5 stories x 10 posts) and 200 claims, half of them fake.

    The same seed always gives the same texts, timestamps and ids.
    """
    posts: list[RawPost] = []
    claims: list[LabeledClaim] = []
    for index, story in enumerate(STORIES):
        rng = derive_rng(seed, index, 0)
        posts.extend(
            RawPost(
                id=f"s{index}-p{number:02d}",
                source=SOURCES[int(rng.integers(len(SOURCES)))],
                timestamp=CENTER + _offset(rng, POST_SPREAD_DAYS),
                text=_sentence(story, rng, story.tone),
            )
            for number in range(POSTS_PER_STORY)
        )
        rng = derive_rng(seed, index, 1)
        for number in range(CLAIMS_PER_STORY):
            fake = number % 2 == 1
            claims.append(
                LabeledClaim(
                    id=f"s{index}-c{number:02d}",
                    text=_sentence(story, rng, story.flipped if fake else story.tone),
                    timestamp=CENTER + _offset(rng, CLAIM_SPREAD_DAYS),
                    label=Label.FAKE if fake else Label.REAL,
                )
            )
    synthetic_logger.debug("Generated %d posts and %d claims", len(posts), len(claims))
    return SyntheticData(tuple(posts), tuple(claims), seed)


def write_synthetic(data: SyntheticData, out_dir: Path) -> tuple[Path, Path]:
    """
    Writes ``posts.jsonl`` and ``claims.jsonl`` into ``out_dir``.

    Returns:
        tuple[Path, Path]: The posts file and the claims file.
    """
    posts_path = out_dir / "posts.jsonl"
    claims_path = out_dir / "claims.jsonl"
    write_jsonl(posts_path, [dict(post.to_record()) for post in data.posts])
    write_jsonl(claims_path, [claim_to_record(claim) for claim in data.claims])
    return posts_path, claims_path
