"""Shared model container and argument checks for the classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from condminer.errors import DataError

MODEL_FORMAT = "condminer-model"
MODEL_VERSION = 1


class MLError(DataError):
    pass


class EmptyTrainingSet(MLError):
    pass


class BadConfig(MLError):
    pass


class DimensionMismatch(MLError):
    pass


@dataclass
class TrainedModel:
    variant: str  # "ZeroR" | "NaiveBayes" | "C45Tree" | "RandomForest"
    classes: tuple[str, ...]
    params: dict[str, Any]
    config: dict[str, Any] = field(default_factory=dict)
    vocabulary: list[str] | None = None
    n_features: int = 0


def prepare(X, y: Sequence[str], classes: Sequence[str] | None):
    """Validate a training set; return (X as uint8 matrix, class indices, class tuple)."""
    X = np.asarray(X, dtype=np.uint8)
    if X.ndim == 1 and X.size == 0:
        X = X.reshape(0, 0)
    if X.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d feature matrix, got shape {X.shape}")
    y = list(y)
    if X.shape[0] == 0 or not y:
        raise EmptyTrainingSet("no training rows")
    if X.shape[0] != len(y):
        raise DimensionMismatch(f"{X.shape[0]} rows but {len(y)} labels")
    if classes is None:
        classes = sorted(set(y))
    classes = tuple(classes)
    lookup = {c: i for i, c in enumerate(classes)}
    try:
        y_idx = np.array([lookup[label] for label in y], dtype=np.int64)
    except KeyError as exc:
        raise BadConfig(f"label {exc.args[0]!r} not in class list {classes}") from None
    return X, y_idx, classes


def check_vector(model: TrainedModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8).ravel()
    if x.shape[0] != model.n_features:
        raise DimensionMismatch(f"vector has {x.shape[0]} features, model expects {model.n_features}")
    return x


def class_counts(y_idx: np.ndarray, k: int) -> np.ndarray:
    return np.bincount(y_idx, minlength=k)
