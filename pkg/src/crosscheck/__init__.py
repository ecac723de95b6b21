"""
crosscheck - flags fake claims by comparing them with what reliable sources posted at the time.

A claim is matched to the story the reliable posts of its time window tell, and a random forest
decides from semantic, sentiment and emotion features whether the claim agrees with that story.
"""

__version__ = "0.1.0"

from crosscheck.cross_checker import (
    Claim,
    CrossChecker,
    LabeledClaim,
    Metrics,
    TrainingReport,
    Unverifiable,
    Verdict,
    balance,
    check_claim,
    cluster_report,
    evaluate,
    load_claims,
    load_fake_real_csv,
    split_claims,
    train_pipeline,
)
from crosscheck.forest import (
    RandomForestModel,
    TrainConfig,
    forest_fit,
    load_model,
    predict,
    save_model,
)
from crosscheck.pipeline import FeatureConfig, FeatureVector


__all__ = [
    "Claim",
    "CrossChecker",
    "FeatureConfig",
    "FeatureVector",
    "LabeledClaim",
    "Metrics",
    "RandomForestModel",
    "TrainConfig",
    "TrainingReport",
    "Unverifiable",
    "Verdict",
    "balance",
    "check_claim",
    "cluster_report",
    "evaluate",
    "forest_fit",
    "load_claims",
    "load_fake_real_csv",
    "load_model",
    "predict",
    "save_model",
    "split_claims",
    "train_pipeline",
]
