"""From-scratch classifiers over binary feature vectors."""

from condminer.ml.api import (
    DISPLAY_NAMES,
    TRAINERS,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
    predict,
    predict_all,
)
from condminer.ml.base import BadConfig, DimensionMismatch, EmptyTrainingSet, MLError, TrainedModel
from condminer.ml.c45 import TreeNode, train_c45
from condminer.ml.forest import train_random_forest
from condminer.ml.naive_bayes import log_joint, train_naive_bayes
from condminer.ml.zeror import train_zeror

__all__ = [
    "BadConfig", "DimensionMismatch", "EmptyTrainingSet", "MLError", "TrainedModel", "TreeNode",
    "train_zeror", "train_naive_bayes", "train_c45", "train_random_forest",
    "predict", "predict_all", "log_joint",
    "model_to_dict", "model_from_dict", "model_to_json", "model_from_json",
    "TRAINERS", "DISPLAY_NAMES",
]
