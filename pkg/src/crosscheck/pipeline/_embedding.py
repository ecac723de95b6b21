"""
Word vectors in the plain-text format published pretrained embeddings use.

A file may start with a ``count dim`` header; every other line is ``word v1 ... v_dim``.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from crosscheck._utils import data_path, iter_text_lines
from crosscheck.pipeline._errors import DimInconsistentError, DimMismatchError, IoError, ParseError


type EmbeddingVector = np.ndarray


@dataclass(frozen=True, eq=False)
class WordVectorStore:
    """Lowercase word to vector table; every vector has length ``dim``."""

    dim: int
    table: dict[str, np.ndarray]

    def __contains__(self, word: object) -> bool:
        return word in self.table

    def __len__(self) -> int:
        return len(self.table)

    def __getitem__(self, word: str) -> np.ndarray:
        return self.table[word]


def _is_header(parts: list[str]) -> bool:
    return len(parts) == 2 and all(part.isdigit() for part in parts)


def load_vectors(path: Path) -> WordVectorStore:
    """
    Loads a word-vector text file. Later duplicates overwrite earlier ones.

    Args:
        path (Path): The vector file.

    Returns:
        WordVectorStore: The loaded store.

    Raises:
        IoError: If the file cannot be read.
        DimInconsistentError: If a line's vector length differs from the others (or the header).
        ParseError: If a value is not a finite number, or the file holds no vectors.
    """
    try:
        lines = list(iter_text_lines(path))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    dim: int | None = None
    table: dict[str, np.ndarray] = {}
    for position, (number, line) in enumerate(lines):
        parts = line.split()
        if position == 0 and _is_header(parts):
            dim = int(parts[1])
            continue
        word, values = parts[0].lower(), parts[1:]
        if dim is None:
            dim = len(values)
        if len(values) != dim or dim == 0:
            raise DimInconsistentError(
                f"expected {dim} values for {word!r}, got {len(values)}", number
            )
        try:
            vector = np.array([float(value) for value in values], dtype=np.float64)
        except ValueError as exc:
            raise ParseError(f"bad value for {word!r}: {exc}", number) from exc
        if not np.isfinite(vector).all():
            raise ParseError(f"non-finite value for {word!r}", number)
        table[word] = vector
    if dim is None or not table:
        raise ParseError(f"{path} holds no word vectors")
    return WordVectorStore(dim=dim, table=table)


def default_vectors() -> WordVectorStore:
    """The small bundled fixture store."""
    return load_vectors(data_path("vectors.txt"))


def embed(tokens: Sequence[str], store: WordVectorStore) -> EmbeddingVector:
    """
    Mean of the vectors of the in-vocabulary tokens; the zero vector when there are none.

    Tokens are summed in sorted order, so any permutation gives the same bits.
    """
    known = sorted(token for token in tokens if token in store)
    if not known:
        return np.zeros(store.dim, dtype=np.float64)
    total = np.zeros(store.dim, dtype=np.float64)
    for token in known:
        total += store[token]
    return total / len(known)


def semantic_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """
    Cosine of two embeddings; 0 when either is the zero vector.

    Raises:
        DimMismatchError: If the dimensions differ.
    """
    if a.shape != b.shape:
        raise DimMismatchError(f"cannot compare embeddings of shape {a.shape} and {b.shape}")
    norm_a, norm_b = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if norm_a == 0 or norm_b == 0:
        return 0.0
    return max(-1.0, min(1.0, float(np.dot(a, b)) / (norm_a * norm_b)))
