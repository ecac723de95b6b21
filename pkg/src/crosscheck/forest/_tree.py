"""
CART-style decision trees over dense feature rows.

Labels are class indices into ``CLASS_ORDER`` (0 is fake, 1 is real). A tree is a flat tuple of
nodes; children are referenced by position, and node 0 is the root. A sample goes left when its
feature value is ``<=`` the node's threshold.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from crosscheck.pipeline._errors import EmptyNodeError


#: Smallest impurity decrease treated as a real improvement.
MIN_DECREASE = 1e-12

N_CLASSES = 2


def gini(class_counts: Sequence[int]) -> float:
    """
    Gini impurity ``1 - sum(p_c ** 2)``.

    Raises:
        EmptyNodeError: If every count is zero.
        ValueError: If a count is negative.

    Examples:
        gini((3, 1))  # 0.375
    """
    if any(count < 0 for count in class_counts):
        raise ValueError(f"class counts must be nonnegative, got {tuple(class_counts)}")
    total = sum(class_counts)
    if total == 0:
        raise EmptyNodeError("impurity of an empty node is undefined")
    return 1.0 - sum((count / total) ** 2 for count in class_counts)


class Split(NamedTuple):
    """The chosen split of a node."""

    feature: int
    threshold: float
    decrease: float


def _midpoint(low: float, high: float) -> float:
    middle = low / 2 + high / 2
    # adjacent floats can round up onto ``high``
    return middle if low <= middle < high else low


def _children_impurity(left_fake: np.ndarray, n_left: np.ndarray, fake: int, n: int) -> np.ndarray:
    n_right = n - n_left
    right_fake = fake - left_fake
    left_share = left_fake / n_left
    right_share = right_fake / n_right
    left_gini = 1.0 - left_share**2 - (1.0 - left_share) ** 2
    right_gini = 1.0 - right_share**2 - (1.0 - right_share) ** 2
    return (n_left * left_gini + n_right * right_gini) / n


def best_split(
    X: np.ndarray, y: np.ndarray, feature_subset: Sequence[int], min_samples_split: int = 2
) -> Split | None:
    """
    Exhaustive search for the split with the largest weighted Gini decrease.

    Candidate thresholds are the midpoints between consecutive distinct values of each feature.
    Ties go to the lower feature index, then the lower threshold.

    Args:
        X (np.ndarray): ``(n, d)`` feature rows of the node.
        y (np.ndarray): ``n`` class indices.
        feature_subset: Features to consider.
        min_samples_split (int): Nodes smaller than this are not split.

    Returns:
        Split | None: The best split, or ``None`` when nothing lowers the impurity.

    Raises:
        ValueError: If ``feature_subset`` is empty.
    """
    if not len(feature_subset):
        raise ValueError("feature subset must not be empty")
    n = y.shape[0]
    if n < max(2, min_samples_split):
        return None
    is_fake = (y == 0).astype(np.int64)
    fake = int(is_fake.sum())
    parent = gini((fake, n - fake))
    if parent == 0:
        return None

    best: Split | None = None
    for feature in sorted(int(f) for f in feature_subset):
        column = X[:, feature]
        order = np.argsort(column, kind="stable")
        values = column[order]
        boundaries = np.flatnonzero(values[:-1] < values[1:])
        if boundaries.size == 0:
            continue
        left_fake = np.cumsum(is_fake[order])[boundaries]
        decreases = parent - _children_impurity(left_fake, boundaries + 1, fake, n)
        top = float(decreases.max())
        if top <= MIN_DECREASE or (best is not None and top <= best.decrease + MIN_DECREASE):
            continue
        first = int(np.flatnonzero(decreases >= top - MIN_DECREASE)[0])
        at = int(boundaries[first])
        best = Split(feature, _midpoint(float(values[at]), float(values[at + 1])), top)
    return best


class Leaf(NamedTuple):
    """Terminal node holding the training class counts that reached it."""

    counts: tuple[int, int]

    @property
    def prediction(self) -> int:
        """Majority class index; ties go to fake (0)."""
        return 0 if self.counts[0] >= self.counts[1] else 1


class Internal(NamedTuple):
    """Split node; ``left`` and ``right`` are node positions."""

    feature: int
    threshold: float
    left: int
    right: int


type Node = Leaf | Internal


@dataclass(frozen=True)
class DecisionTree:
    """A trained tree. ``nodes[0]`` is the root."""

    nodes: tuple[Node, ...]

    def leaf_for(self, row: np.ndarray) -> Leaf:
        """Routes one row to its leaf; every finite or infinite value reaches one."""
        node = self.nodes[0]
        while isinstance(node, Internal):
            node = self.nodes[node.left if row[node.feature] <= node.threshold else node.right]
        return node

    def predict_index(self, row: np.ndarray) -> int:
        """Class index voted for ``row``."""
        return self.leaf_for(row).prediction

    @property
    def depth(self) -> int:
        """Length of the longest root-to-leaf path."""
        deepest = 0
        stack = [(0, 0)]
        while stack:
            position, level = stack.pop()
            node = self.nodes[position]
            if isinstance(node, Internal):
                stack.extend(((node.left, level + 1), (node.right, level + 1)))
            else:
                deepest = max(deepest, level)
        return deepest

    def split_features(self) -> list[int]:
        """Feature index of every internal node."""
        return [node.feature for node in self.nodes if isinstance(node, Internal)]


def _candidate_features(
    X: np.ndarray, features_per_split: int, rng: np.random.Generator
) -> list[int]:
    # constant features cannot split, so they are not counted toward the subset
    varying = [int(f) for f in rng.permutation(X.shape[1]) if X[:, f].min() < X[:, f].max()]
    return varying[:features_per_split]


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    rng: np.random.Generator,
    *,
    features_per_split: int,
    min_samples_split: int = 2,
    max_depth: int | None = None,
) -> DecisionTree:
    """
    Grows one tree, drawing a fresh feature subset from ``rng`` at every node.

    Growth stops at pure nodes, at nodes smaller than ``min_samples_split``, at ``max_depth``,
    or when no candidate split lowers the impurity.
    """
    nodes: list[Node | None] = [None]
    stack: list[tuple[int, np.ndarray, int]] = [(0, np.arange(y.shape[0]), 0)]
    while stack:
        position, indices, depth = stack.pop()
        labels = y[indices]
        fake = int((labels == 0).sum())
        leaf = Leaf((fake, int(labels.shape[0]) - fake))
        split = None
        if (
            min(leaf.counts) > 0
            and indices.shape[0] >= min_samples_split
            and (max_depth is None or depth < max_depth)
            and (subset := _candidate_features(X[indices], features_per_split, rng))
        ):
            split = best_split(X[indices], labels, subset, min_samples_split)
        if split is None:
            nodes[position] = leaf
            continue
        goes_left = X[indices, split.feature] <= split.threshold
        left, right = len(nodes), len(nodes) + 1
        nodes.extend((None, None))
        nodes[position] = Internal(split.feature, split.threshold, left, right)
        stack.append((right, indices[~goes_left], depth + 1))
        stack.append((left, indices[goes_left], depth + 1))
    return DecisionTree(tuple(node for node in nodes if node is not None))
