"""
TF-IDF over entity lists.

The model is fitted on one window's reliable posts and never persisted. Weights are raw counts
times a smoothed idf, ``ln((1 + N) / (1 + df)) + 1``, then L2-normalized.
"""

import math

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from crosscheck.pipeline._entities import EntityList
from crosscheck.pipeline._errors import DimMismatchError, EmptyVocabularyError


@dataclass(frozen=True, eq=False)
class SparseVector:
    """A vector stored as strictly increasing indices and their nonzero weights."""

    dim: int
    indices: np.ndarray
    weights: np.ndarray

    @classmethod
    def zero(cls, dim: int) -> "SparseVector":
        """The all-zero vector of dimension ``dim``."""
        return cls(dim, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))

    @property
    def pairs(self) -> list[tuple[int, float]]:
        """``(index, weight)`` pairs in index order."""
        return [(int(i), float(w)) for i, w in zip(self.indices, self.weights, strict=True)]

    @property
    def is_zero(self) -> bool:
        """True when no weight is stored."""
        return self.indices.size == 0

    @property
    def norm(self) -> float:
        """The L2 norm."""
        return float(np.sqrt(np.dot(self.weights, self.weights)))

    def to_dense(self) -> np.ndarray:
        """The vector as a dense float array of length ``dim``."""
        dense = np.zeros(self.dim, dtype=np.float64)
        dense[self.indices] = self.weights
        return dense


@dataclass(frozen=True, eq=False)
class TfIdfModel:
    """Entity vocabulary (first-occurrence order) with one idf weight per column."""

    vocabulary: dict[str, int]
    idf: np.ndarray
    n_docs: int

    @property
    def dim(self) -> int:
        """Vocabulary size."""
        return len(self.vocabulary)

    @property
    def terms(self) -> list[str]:
        """Vocabulary entries ordered by column."""
        return list(self.vocabulary)


def fit(docs: Sequence[EntityList]) -> TfIdfModel:
    """
    Fits the vocabulary and idf weights.

    Args:
        docs: One entity list per reliable post.

    Returns:
        TfIdfModel: The fitted model.

    Raises:
        ValueError: If ``docs`` is empty.
        EmptyVocabularyError: If no document has an entity.
    """
    if not docs:
        raise ValueError("cannot fit TF-IDF on zero documents")
    vocabulary: dict[str, int] = {}
    doc_freq: list[int] = []
    for doc in docs:
        for entity in dict.fromkeys(doc):
            if entity not in vocabulary:
                vocabulary[entity] = len(vocabulary)
                doc_freq.append(0)
            doc_freq[vocabulary[entity]] += 1
    if not vocabulary:
        raise EmptyVocabularyError("no document in the window has a named entity")
    n_docs = len(docs)
    idf = np.array([math.log((1 + n_docs) / (1 + df)) + 1 for df in doc_freq], dtype=np.float64)
    return TfIdfModel(vocabulary=vocabulary, idf=idf, n_docs=n_docs)


def transform(model: TfIdfModel, doc: EntityList) -> SparseVector:
    """
    Vectorizes one document; out-of-vocabulary entities are ignored.

    Returns:
        SparseVector: The unit-norm TF-IDF vector, or the zero vector when nothing matches.
    """
    columns = sorted(
        (model.vocabulary[entity], count)
        for entity, count in doc.counts.items()
        if entity in model.vocabulary
    )
    if not columns:
        return SparseVector.zero(model.dim)
    indices = np.array([column for column, _ in columns], dtype=np.int64)
    weights = np.array([count for _, count in columns], dtype=np.float64) * model.idf[indices]
    return SparseVector(model.dim, indices, weights / np.linalg.norm(weights))


def cosine(u: SparseVector, v: SparseVector) -> float:
    """
    Cosine similarity of two sparse vectors; 0 when either is zero.

    Raises:
        DimMismatchError: If the dimensions differ.
    """
    if u.dim != v.dim:
        raise DimMismatchError(f"cannot compare vectors of dim {u.dim} and {v.dim}")
    if u.is_zero or v.is_zero:
        return 0.0
    _, u_at, v_at = np.intersect1d(u.indices, v.indices, assume_unique=True, return_indices=True)
    dot = float(np.dot(u.weights[u_at], v.weights[v_at]))
    return max(-1.0, min(1.0, dot / (u.norm * v.norm)))


def to_matrix(vectors: Sequence[SparseVector]) -> np.ndarray:
    """Stacks sparse vectors into a dense ``(n, dim)`` array."""
    if not vectors:
        return np.zeros((0, 0), dtype=np.float64)
    return np.vstack([vector.to_dense() for vector in vectors])
