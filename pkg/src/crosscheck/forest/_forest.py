"""
Random forest: bagged Gini trees with per-node feature subsampling, and its JSON model file.

Tree ``t`` draws its bootstrap sample and every feature subset from a generator seeded with
``(seed, t)``, so serial and threaded training give the same model.
"""

import json
import logging
import math

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Self

import numpy as np

from crosscheck._utils import derive_rng, dumps, write_json
from crosscheck.forest._tree import DecisionTree, Internal, Leaf, Node, grow_tree
from crosscheck.logger import get_logger
from crosscheck.pipeline._constants import FEATURE_LAYOUT_VERSION, FEATURE_NAMES, MODEL_SCHEMA
from crosscheck.pipeline._errors import (
    IoError,
    LayoutMismatchError,
    ParseError,
    SchemaVersionMismatchError,
    ShapeMismatchError,
    SingleClassDataError,
)
from crosscheck.pipeline._features import FeatureVector
from crosscheck.pipeline._types import CLASS_ORDER, Label


forest_logger = get_logger("FOREST", logging.WARNING)

type Rows = Sequence[FeatureVector] | np.ndarray


@dataclass(frozen=True)
class TrainConfig:
    """Forest hyperparameters; recorded verbatim in the model file."""

    n_trees: int = 100
    max_depth: int | None = None
    min_samples_split: int = 2
    features_per_split: int = math.ceil(math.sqrt(len(FEATURE_NAMES)))
    bootstrap: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be positive, got {self.n_trees}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError(f"max_depth must be positive, got {self.max_depth}")
        if self.min_samples_split < 2:
            raise ValueError(f"min_samples_split must be at least 2, got {self.min_samples_split}")
        if self.features_per_split < 1:
            raise ValueError(f"features_per_split must be positive, got {self.features_per_split}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Self:
        """
        Rebuilds a config from its model-file form.

        Raises:
            ValueError: On unknown keys or invalid values.
        """
        known = {item.name for item in fields(cls)}
        if unknown := sorted(set(data) - known):
            raise ValueError(f"unknown train config key(s): {', '.join(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class RandomForestModel:
    """An immutable trained forest."""

    trees: tuple[DecisionTree, ...]
    config: TrainConfig
    layout_version: str = FEATURE_LAYOUT_VERSION
    n_features: int = len(FEATURE_NAMES)
    class_order: tuple[Label, ...] = CLASS_ORDER

    def split_counts(self) -> list[int]:
        """How many internal nodes split on each feature, across all trees."""
        counts = [0] * self.n_features
        for tree in self.trees:
            for feature in tree.split_features():
                counts[feature] += 1
        return counts

    def to_dict(self) -> dict[str, Any]:
        """The model-file form."""
        return {
            "schema": MODEL_SCHEMA,
            "config": asdict(self.config),
            "layout_version": self.layout_version,
            "n_features": self.n_features,
            "class_order": [str(label) for label in self.class_order],
            "trees": [[_node_to_dict(node) for node in tree.nodes] for tree in self.trees],
        }

    def to_json(self) -> str:
        """Compact, deterministic JSON of `to_dict`."""
        return dumps(self.to_dict())


def _node_to_dict(node: Node) -> dict[str, Any]:
    if isinstance(node, Leaf):
        return {"counts": list(node.counts)}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": node.left,
        "right": node.right,
    }


def _as_rows(X: Rows) -> tuple[np.ndarray, str | None]:
    if isinstance(X, np.ndarray):
        return np.asarray(X, dtype=np.float64), None
    versions = {row.layout_version for row in X}
    if len(versions) > 1:
        raise LayoutMismatchError(f"feature vectors mix layouts: {sorted(versions)}")
    if not X:
        return np.zeros((0, len(FEATURE_NAMES)), dtype=np.float64), None
    return np.vstack([row.as_array() for row in X]), versions.pop()


def _train_tree(X: np.ndarray, y: np.ndarray, config: TrainConfig, index: int) -> DecisionTree:
    rng = derive_rng(config.seed, index)
    n = y.shape[0]
    sample = rng.integers(n, size=n) if config.bootstrap else np.arange(n)
    return grow_tree(
        X[sample],
        y[sample],
        rng,
        features_per_split=config.features_per_split,
        min_samples_split=config.min_samples_split,
        max_depth=config.max_depth,
    )


def forest_fit(
    X: Rows,
    y: Sequence[Label],
    config: TrainConfig | None = None,
    *,
    layout_version: str = FEATURE_LAYOUT_VERSION,
    workers: int = 1,
) -> RandomForestModel:
    """
    Trains a random forest.

    Args:
        X: Feature vectors, or an ``(n, d)`` array tagged with ``layout_version``.
        y: One label per row.
        config (TrainConfig | None): Hyperparameters; defaults when ``None``.
        layout_version (str): Layout of array input; feature vectors carry their own.
        workers (int): Threads used to grow trees.

    Returns:
        RandomForestModel: The trained forest.

    Raises:
        ShapeMismatchError: If rows and labels differ in count or ``X`` is not 2-D.
        SingleClassDataError: If only one class is present.
        LayoutMismatchError: If the feature vectors mix layouts.
        ValueError: If ``features_per_split`` exceeds the width, or a value is not finite.
    """
    config = config or TrainConfig()
    rows, row_layout = _as_rows(X)
    layout = row_layout or layout_version
    if rows.ndim != 2 or rows.shape[0] != len(y):
        raise ShapeMismatchError(f"{rows.shape[0]} feature rows against {len(y)} labels")
    if len(set(y)) < 2:
        raise SingleClassDataError("training needs both fake and real examples")
    if config.features_per_split > rows.shape[1]:
        raise ValueError(
            f"features_per_split {config.features_per_split} exceeds width {rows.shape[1]}"
        )
    if not np.isfinite(rows).all():
        raise ValueError("feature values must be finite")
    labels = np.array([CLASS_ORDER.index(label) for label in y], dtype=np.int64)

    def train(index: int) -> DecisionTree:
        return _train_tree(rows, labels, config, index)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trees = tuple(pool.map(train, range(config.n_trees)))
    else:
        trees = tuple(train(index) for index in range(config.n_trees))
    forest_logger.info(
        "Trained %d trees on %d rows (max depth %d)",
        len(trees),
        rows.shape[0],
        max(tree.depth for tree in trees),
    )
    return RandomForestModel(
        trees=trees, config=config, layout_version=layout, n_features=rows.shape[1]
    )


def predict(model: RandomForestModel, x: FeatureVector | np.ndarray) -> tuple[Label, float]:
    """
    Majority vote of the trees.

    Returns:
        tuple[Label, float]: The label (a tied vote is fake) and the share of trees voting fake.

    Raises:
        LayoutMismatchError: If a feature vector's layout differs from the model's.
        ShapeMismatchError: If the row width differs from the model's.
    """
    if isinstance(x, FeatureVector):
        if x.layout_version != model.layout_version:
            raise LayoutMismatchError(
                f"model expects {model.layout_version}, got {x.layout_version}"
            )
        row = x.as_array()
    else:
        row = np.asarray(x, dtype=np.float64)
    if row.shape != (model.n_features,):
        raise ShapeMismatchError(f"model expects {model.n_features} features, got {row.shape}")
    fake_votes = sum(1 for tree in model.trees if tree.predict_index(row) == 0)
    score = fake_votes / len(model.trees)
    label = model.class_order[0] if 2 * fake_votes >= len(model.trees) else model.class_order[1]
    return label, score


def save_model(model: RandomForestModel, path: Path) -> None:
    """
    Writes the model file.

    Raises:
        IoError: If the file cannot be written.
    """
    try:
        write_json(path, model.to_dict())
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _node_from_dict(data: dict[str, Any], n_nodes: int, n_features: int) -> Node:
    if "counts" in data:
        fake, real = (int(count) for count in data["counts"])
        if fake < 0 or real < 0:
            raise ValueError("leaf counts must be nonnegative")
        return Leaf((fake, real))
    node = Internal(
        int(data["feature"]), float(data["threshold"]), int(data["left"]), int(data["right"])
    )
    if not 0 <= node.feature < n_features or not math.isfinite(node.threshold):
        raise ValueError(f"bad split node {data}")
    if not (0 < node.left < n_nodes and 0 < node.right < n_nodes):
        raise ValueError(f"child index out of range in {data}")
    return node


def model_from_dict(data: Any) -> RandomForestModel:
    """
    Rebuilds a model from its model-file form.

    Raises:
        SchemaVersionMismatchError: If the schema tag is not the one this version writes.
        ParseError: If the content is malformed.
    """
    if not isinstance(data, dict) or "schema" not in data:
        raise ParseError("model file has no schema tag")
    if data["schema"] != MODEL_SCHEMA:
        raise SchemaVersionMismatchError(
            f"model schema {data['schema']!r} is not {MODEL_SCHEMA!r}"
        )
    try:
        n_features = int(data["n_features"])
        trees = []
        for raw_tree in data["trees"]:
            nodes = tuple(_node_from_dict(node, len(raw_tree), n_features) for node in raw_tree)
            if not nodes:
                raise ValueError("tree without nodes")
            trees.append(DecisionTree(nodes))
        model = RandomForestModel(
            trees=tuple(trees),
            config=TrainConfig.from_dict(data["config"]),
            layout_version=str(data["layout_version"]),
            n_features=n_features,
            class_order=tuple(Label.from_str(label) for label in data["class_order"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed model file: {exc}") from exc
    if len(model.trees) != model.config.n_trees:
        raise ParseError(
            f"model lists {len(model.trees)} trees, config says {model.config.n_trees}"
        )
    if model.class_order != CLASS_ORDER:
        raise ParseError(f"unexpected class order {[str(label) for label in model.class_order]}")
    return model


def load_model(path: Path) -> RandomForestModel:
    """
    Reads a model file written by `save_model`.

    Raises:
        IoError: If the file cannot be read.
        ParseError: If the file is not valid JSON or is malformed.
        SchemaVersionMismatchError: If the schema tag is unknown.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.lineno) from exc
    return model_from_dict(data)
