"""
Named-entity extraction for the clustering vocabulary.

The default extractor is a capitalization + gazetteer heuristic. Anything with an
``extract(text_cased) -> EntityList`` method can stand in for it, e.g. a statistical NER model.
"""

import re

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path
from re import Pattern
from typing import Protocol

from crosscheck._utils import data_path
from crosscheck.pipeline._constants import DEFAULT_MIN_TOKEN_LEN
from crosscheck.pipeline._errors import IoError


@dataclass(frozen=True)
class EntityList:
    """The multiset of lowercase entities found in one document."""

    entities: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[str]:
        return iter(self.entities)

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, entity: object) -> bool:
        return entity in self.entities

    @property
    def counts(self) -> Counter[str]:
        """Entity multiplicities."""
        return Counter(self.entities)


class EntityExtractor(Protocol):
    """Anything that turns cleaned, cased text into entities."""

    def extract(self, text_cased: str) -> EntityList:
        """Extract the entities of one document."""
        ...


def _normalize_phrase(phrase: str) -> str:
    return " ".join(phrase.lower().split())


@dataclass(frozen=True)
class GazetteerExtractor:
    """
    Capitalized runs plus gazetteer phrases.

    A run is a maximal sequence of tokens that start with an uppercase character and are at
    least ``min_token_len`` long. A run of two or more tokens yields the joined phrase and each
    token; a run of one yields that token once. Every case-insensitive gazetteer hit is added on
    top, so the same string can be counted by both rules.
    """

    gazetteer: frozenset[str] = frozenset()
    min_token_len: int = DEFAULT_MIN_TOKEN_LEN
    _patterns: tuple[tuple[str, Pattern[str]], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.min_token_len < 1:
            raise ValueError(f"min_token_len must be positive, got {self.min_token_len}")
        phrases = frozenset(_normalize_phrase(phrase) for phrase in self.gazetteer)
        if "" in phrases:
            raise ValueError("gazetteer phrases must be nonempty")
        object.__setattr__(self, "gazetteer", phrases)
        patterns = tuple(
            (phrase, re.compile(rf"(?<!\w){re.escape(phrase)}(?!\w)", re.IGNORECASE))
            for phrase in sorted(phrases)
        )
        object.__setattr__(self, "_patterns", patterns)

    def _is_capitalized(self, token: str) -> bool:
        return len(token) >= self.min_token_len and token[0].isupper()

    def _runs(self, tokens: list[str]) -> Iterator[list[str]]:
        run: list[str] = []
        for token in tokens:
            if self._is_capitalized(token):
                run.append(token)
                continue
            if run:
                yield run
            run = []
        if run:
            yield run

    def extract(self, text_cased: str) -> EntityList:
        """
        Extract the entities of one document.

        Args:
            text_cased (str): Cleaned text with its original casing.

        Returns:
            EntityList: Lowercased entities, duplicates kept.
        """
        found: list[str] = []
        for run in self._runs(text_cased.split()):
            if len(run) > 1:
                found.append(" ".join(run).lower())
            found.extend(token.lower() for token in run)
        for phrase, pattern in self._patterns:
            found.extend(phrase for _ in pattern.finditer(text_cased))
        return EntityList(tuple(found))


def load_gazetteer(path: Path) -> frozenset[str]:
    """
    Loads a gazetteer: one phrase per line, ``#`` comments allowed.

    Raises:
        IoError: If the file cannot be read.
    """
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    phrases = (_normalize_phrase(line.split("#", 1)[0]) for line in lines)
    return frozenset(phrase for phrase in phrases if phrase)


def default_extractor() -> GazetteerExtractor:
    """The extractor loaded with the bundled gazetteer."""
    return GazetteerExtractor(load_gazetteer(data_path("gazetteer.txt")))


def extract_entities(text_cased: str, extractor: EntityExtractor) -> EntityList:
    """Runs ``extractor`` on one cleaned, cased text."""
    return extractor.extract(text_cased)
