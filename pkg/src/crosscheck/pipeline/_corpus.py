"""
Reliable-source corpus: ingestion, cleaning, and time-window selection.

Cleaning runs a fixed rule order:

1. invalid UTF-8 was decoded to U+FFFD when the file was read; U+FFFD is stripped here
2. URLs, emails and handles are removed
3. punctuation is stripped from each whitespace token; apostrophes go with it, so ``Kabul's``
   becomes ``Kabuls``, while hyphens inside words survive
4. tokens whose lowercase form is a stop word are dropped

The order matters: stripping punctuation before removing handles would turn ``@BBC`` into the
token ``BBC``.
"""

import json
import logging

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from typing import Any, NamedTuple, Self

from crosscheck._utils import (
    data_path,
    format_rfc3339,
    iter_text_lines,
    parse_rfc3339,
    write_jsonl,
)
from crosscheck.logger import get_logger
from crosscheck.pipeline._constants import DEFAULT_RADIUS_DAYS, REPLACEMENT_CHARACTER, Patterns
from crosscheck.pipeline._errors import (
    DuplicateIdError,
    EmptyAfterCleaningError,
    EmptyWindowError,
    IoError,
    ParseError,
)
from crosscheck.pipeline._types import CleanPostRecord, PostRecord


corpus_logger = get_logger("CORPUS", logging.WARNING)

_POST_FIELDS = ("id", "source", "timestamp", "text")


@dataclass(frozen=True)
class RawPost:
    """A post as read from disk."""

    id: str
    source: str
    timestamp: datetime
    text: str

    def to_record(self) -> PostRecord:
        """Converts the post back to its JSONL form."""
        return {
            "id": self.id,
            "source": self.source,
            "timestamp": format_rfc3339(self.timestamp),
            "text": self.text,
        }


@dataclass(frozen=True)
class CleanPost(RawPost):
    """
    A post after cleaning.

    ``text_cased`` keeps the original casing for entity extraction; everything else reads
    ``text_norm`` or ``tokens``.
    """

    text_cased: str = ""
    text_norm: str = ""
    tokens: tuple[str, ...] = field(default=())

    def to_record(self) -> CleanPostRecord:
        """Converts the post to a corpus-store line."""
        return {
            **super().to_record(),
            "text_cased": self.text_cased,
            "text_norm": self.text_norm,
            "tokens": list(self.tokens),
        }

    @classmethod
    def from_record(cls, record: dict[str, Any], line: int | None = None) -> Self:
        """
        Rebuilds a clean post from a corpus-store line.

        Raises:
            ParseError: If a field is missing or malformed.
        """
        raw = _raw_post(record, line)
        try:
            tokens = tuple(str(token) for token in record["tokens"])
            return cls(
                id=raw.id,
                source=raw.source,
                timestamp=raw.timestamp,
                text=raw.text,
                text_cased=str(record["text_cased"]),
                text_norm=str(record["text_norm"]),
                tokens=tokens,
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed corpus store record: {exc}", line) from exc


class CleanedText(NamedTuple):
    """The three views of a cleaned text."""

    text_cased: str
    text_norm: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class TimeWindow:
    """A closed interval of ``radius_days`` on each side of ``center``."""

    center: datetime
    radius_days: int = DEFAULT_RADIUS_DAYS

    def __post_init__(self) -> None:
        if self.radius_days < 1:
            raise ValueError(f"radius_days must be positive, got {self.radius_days}")

    @property
    def start(self) -> datetime:
        """The earliest instant inside the window."""
        return self.center - timedelta(days=self.radius_days)

    @property
    def end(self) -> datetime:
        """The latest instant inside the window."""
        return self.center + timedelta(days=self.radius_days)

    def __contains__(self, instant: datetime) -> bool:
        return self.start <= instant <= self.end


def _raw_post(record: Any, line: int | None) -> RawPost:
    if not isinstance(record, dict):
        raise ParseError("expected a JSON object", line)
    if missing := [name for name in _POST_FIELDS if name not in record]:
        raise ParseError(f"missing field(s): {', '.join(missing)}", line)
    post_id, source, text = record["id"], record["source"], record["text"]
    if not isinstance(post_id, str) or not post_id:
        raise ParseError("id must be a nonempty string", line)
    if not isinstance(source, str) or not isinstance(text, str):
        raise ParseError("source and text must be strings", line)
    if not text.strip():
        raise ParseError(f"post {post_id} has empty text", line)
    try:
        timestamp = parse_rfc3339(record["timestamp"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad timestamp: {exc}", line) from exc
    return RawPost(id=post_id, source=source, timestamp=timestamp, text=text)


def read_records(path: Path) -> Iterable[tuple[int, Any]]:
    """
    Yields ``(line_number, decoded_json)`` for each nonblank line of a JSONL file.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a line is not valid JSON.
    """
    try:
        lines = list(iter_text_lines(path))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    for number, line in lines:
        try:
            yield number, json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", number) from exc


def load_posts(path: Path) -> list[RawPost]:
    """
    Loads raw posts from a JSONL file, one ``{id, source, timestamp, text}`` object per line.

    Args:
        path (Path): The JSONL file.

    Returns:
        list[RawPost]: The posts in file order.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a line is not valid JSON or a field is malformed.
        DuplicateIdError: If an id repeats; the error names the later line.
    """
    posts: list[RawPost] = []
    seen: dict[str, int] = {}
    for number, record in read_records(path):
        post = _raw_post(record, number)
        if post.id in seen:
            raise DuplicateIdError(
                f"duplicate id {post.id!r} (first seen on line {seen[post.id]})", number
            )
        seen[post.id] = number
        posts.append(post)
    corpus_logger.debug("Loaded %d posts from %s", len(posts), path)
    return posts


def load_wordlist(path: Path) -> frozenset[str]:
    """
    Loads a one-word-per-line list, lowercased, with ``#`` comments.

    Raises:
        IoError: If the file cannot be read.
    """
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    words = (line.split("#", 1)[0].strip().lower() for line in lines)
    return frozenset(word for word in words if word)


def default_stopwords() -> frozenset[str]:
    """The bundled English stop-word list."""
    return load_wordlist(data_path("stopwords.txt"))


def _strip_token(token: str) -> str:
    return Patterns.loose_hyphen.sub("", Patterns.punctuation.sub("", token))


def clean_text(text: str, stopwords: frozenset[str] | set[str]) -> CleanedText:
    """
    Applies the cleaning rules to one text.

    Args:
        text (str): The raw text.
        stopwords: Nonempty set of lowercase stop words.

    Returns:
        CleanedText: Cased text, its lowercase form, and the lowercase tokens.

    Raises:
        ValueError: If the stop-word set is empty or holds uppercase entries.
        EmptyAfterCleaningError: If no token survives.

    Examples:
        clean_text("Check https://t.co/x @BBC the UN attack!", {"the", "check"})
        # CleanedText(text_cased="UN attack", text_norm="un attack", tokens=("un", "attack"))
    """
    if not stopwords:
        raise ValueError("stop-word set must not be empty")
    if any(word != word.lower() for word in stopwords):
        raise ValueError("stop words must be lowercase")
    text = text.replace(REPLACEMENT_CHARACTER, " ")
    for pattern in Patterns.removal_order:
        text = pattern.sub(" ", text)
    kept = [
        stripped
        for token in text.split()
        if (stripped := _strip_token(token)) and stripped.lower() not in stopwords
    ]
    if not kept:
        raise EmptyAfterCleaningError("no tokens survive cleaning")
    text_cased = " ".join(kept)
    text_norm = text_cased.lower()
    return CleanedText(text_cased, text_norm, tuple(text_norm.split()))


def clean_post(post: RawPost, stopwords: frozenset[str] | set[str]) -> CleanPost:
    """Cleans a raw post, keeping its metadata."""
    cleaned = clean_text(post.text, stopwords)
    return CleanPost(
        id=post.id,
        source=post.source,
        timestamp=post.timestamp,
        text=post.text,
        text_cased=cleaned.text_cased,
        text_norm=cleaned.text_norm,
        tokens=cleaned.tokens,
    )


def clean_posts(posts: Iterable[RawPost], stopwords: frozenset[str] | set[str]) -> list[CleanPost]:
    """
    Cleans every post, dropping (and logging) the ones nothing survives in.

    Returns:
        list[CleanPost]: The cleaned posts in input order.
    """
    cleaned: list[CleanPost] = []
    for post in posts:
        try:
            cleaned.append(clean_post(post, stopwords))
        except EmptyAfterCleaningError:
            corpus_logger.info("Dropping post %s: nothing left after cleaning", post.id)
    return cleaned


def select_window(posts: Sequence[CleanPost], window: TimeWindow) -> list[CleanPost]:
    """
    Selects the posts whose timestamp lies inside the window, both ends inclusive.

    Args:
        posts: Cleaned posts.
        window (TimeWindow): The claim's window.

    Returns:
        list[CleanPost]: The matching posts in their original order.

    Raises:
        EmptyWindowError: If no post falls inside the window.
    """
    selected = [post for post in posts if post.timestamp in window]
    if not selected:
        raise EmptyWindowError(
            f"no reliable post between {format_rfc3339(window.start)} "
            f"and {format_rfc3339(window.end)}"
        )
    return selected


def restrict_sources(posts: Sequence[CleanPost], sources: Iterable[str] | None) -> list[CleanPost]:
    """
    Keeps only posts from the given accounts (case-insensitive). ``None`` keeps everything.
    """
    if sources is None:
        return list(posts)
    allowed = {source.strip().lower() for source in sources}
    return [post for post in posts if post.source.strip().lower() in allowed]


def save_store(posts: Sequence[CleanPost], path: Path) -> None:
    """
    Writes cleaned posts to a corpus store (JSONL).

    Raises:
        IoError: If the file cannot be written.
    """
    try:
        write_jsonl(path, [dict(post.to_record()) for post in posts])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_store(path: Path) -> list[CleanPost]:
    """
    Reads a corpus store written by `save_store`.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If a line is malformed.
        DuplicateIdError: If an id repeats.
    """
    posts: list[CleanPost] = []
    seen: set[str] = set()
    for number, record in read_records(path):
        post = CleanPost.from_record(record, number)
        if post.id in seen:
            raise DuplicateIdError(f"duplicate id {post.id!r}", number)
        seen.add(post.id)
        posts.append(post)
    return posts
