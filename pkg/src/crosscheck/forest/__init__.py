"""From-scratch random forest for fake/real classification."""

from crosscheck.forest._forest import (
    RandomForestModel,
    TrainConfig,
    forest_fit,
    load_model,
    model_from_dict,
    predict,
    save_model,
)
from crosscheck.forest._tree import DecisionTree, Internal, Leaf, Split, best_split, gini, grow_tree


__all__ = [
    "DecisionTree",
    "Internal",
    "Leaf",
    "RandomForestModel",
    "Split",
    "TrainConfig",
    "best_split",
    "forest_fit",
    "gini",
    "grow_tree",
    "load_model",
    "model_from_dict",
    "predict",
    "save_model",
]
