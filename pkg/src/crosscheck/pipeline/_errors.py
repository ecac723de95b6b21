"""Exceptions raised by the cross-checking pipeline."""

from crosscheck.pipeline._types import UnverifiableReason


class CrossCheckError(Exception):
    """Base class for every crosscheck error."""


class IoError(CrossCheckError):
    """A file could not be read or written."""


class ParseError(CrossCheckError):
    """
    Input could not be parsed.

    Attributes:
        line: 1-based line number of the offending record, when known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateIdError(ParseError):
    """Two posts in one ingest share an id."""


class DimInconsistentError(ParseError):
    """A word-vector line has the wrong number of components."""


class SchemaVersionMismatchError(CrossCheckError):
    """A model file carries a schema tag this version cannot read."""


class EmptyAfterCleaningError(CrossCheckError):
    """No token survived the cleaning rules."""


class DimMismatchError(CrossCheckError):
    """Two vectors of different dimensions were compared."""


class TooFewPointsError(CrossCheckError):
    """There are fewer points than clusters requested."""


class SingleClusterError(CrossCheckError):
    """Silhouette needs at least two non-empty clusters."""


class EmptyReliableSetError(CrossCheckError):
    """A sentiment difference was asked for against no reliable scores."""


class EmptyStoryError(CrossCheckError):
    """Features were asked for against a story with no posts."""


class LayoutMismatchError(CrossCheckError):
    """A feature vector and a model disagree on the feature layout version."""


class EmptyNodeError(CrossCheckError):
    """Impurity of a node with no samples."""


class SingleClassDataError(CrossCheckError):
    """Training or balancing data holds only one class."""


class ShapeMismatchError(CrossCheckError):
    """Feature rows and labels differ in count or width."""


class NoVerifiableClaimsError(CrossCheckError):
    """Every claim came back Unverifiable."""


class UnverifiableError(CrossCheckError):
    """
    A pipeline stage found no evidence to check the claim against.

    These never escape `check_claim`; they become an `Unverifiable` outcome.
    """

    reason: UnverifiableReason


class EmptyWindowError(UnverifiableError):
    """No reliable post falls inside the claim's time window."""

    reason = UnverifiableReason.EMPTY_WINDOW


class EmptyVocabularyError(UnverifiableError):
    """No post in the window has a single entity."""

    reason = UnverifiableReason.EMPTY_VOCABULARY


class ZeroTargetVectorError(UnverifiableError):
    """The claim shares no entity with the window's vocabulary."""

    reason = UnverifiableReason.ZERO_TARGET_VECTOR


class NoRelevantStoryError(UnverifiableError):
    """No post in the matched cluster is close enough to the claim."""

    reason = UnverifiableReason.NO_RELEVANT_STORY
