"""Common types for the cross-checking pipeline."""

from enum import StrEnum
from typing import TypedDict


class BaseStrEnum(StrEnum):
    """
    Base class for string enums to ensure consistent string representation.
    """

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}.{self.name}"


class Label(BaseStrEnum):
    """The two verdict classes. Fake is the positive class everywhere metrics are computed."""

    FAKE = "fake"
    REAL = "real"

    @classmethod
    def from_str(cls, value: str) -> "Label":
        """
        Parses a label case-insensitively.

        Raises:
            ValueError: If the value is neither fake nor real.
        """
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown label: {value!r}") from None


#: Class order used by the forest: index 0 is fake, index 1 is real.
CLASS_ORDER: tuple[Label, Label] = (Label.FAKE, Label.REAL)


class Emotion(BaseStrEnum):
    """The five emotions the emotion lexicon can assign to a word."""

    HAPPY = "Happy"
    ANGRY = "Angry"
    SAD = "Sad"
    SURPRISE = "Surprise"
    FEAR = "Fear"

    @classmethod
    def from_str(cls, value: str) -> "Emotion":
        """
        Parses an emotion label case-insensitively.

        Raises:
            ValueError: If the value is not one of the five emotions.
        """
        wanted = value.strip().lower()
        for member in cls:
            if member.value.lower() == wanted:
                return member
        raise ValueError(f"Unknown emotion: {value!r}")


class UnverifiableReason(BaseStrEnum):
    """The pipeline stage that found no evidence for a claim."""

    EMPTY_WINDOW = "EmptyWindow"
    EMPTY_VOCABULARY = "EmptyVocabulary"
    ZERO_TARGET_VECTOR = "ZeroTargetVector"
    NO_RELEVANT_STORY = "NoRelevantStory"


class PostRecord(TypedDict):
    """One line of a raw posts JSONL file."""

    id: str
    source: str
    timestamp: str
    text: str


class CleanPostRecord(PostRecord):
    """One line of an ingested corpus store."""

    text_cased: str
    text_norm: str
    tokens: list[str]
