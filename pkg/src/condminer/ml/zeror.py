"""Majority-class baseline."""

import numpy as np

from condminer.ml.base import TrainedModel, class_counts, prepare


def train_zeror(X, y, classes=None) -> TrainedModel:
    X, y_idx, classes = prepare(X, y, classes)
    counts = class_counts(y_idx, len(classes))
    majority = classes[int(np.argmax(counts))]  # argmax keeps the first of tied maxima
    return TrainedModel("ZeroR", classes, {"majority": majority, "counts": counts.tolist()},
                        n_features=X.shape[1])
