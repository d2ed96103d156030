"""Prediction dispatch and JSON (de)serialization for every model variant."""

from __future__ import annotations

import json

import numpy as np

from condminer.ml.base import MODEL_FORMAT, MODEL_VERSION, MLError, TrainedModel, check_vector
from condminer.ml.c45 import TreeNode, predict_c45, train_c45
from condminer.ml.forest import predict_forest, train_random_forest
from condminer.ml.naive_bayes import log_joint, train_naive_bayes
from condminer.ml.zeror import train_zeror

TIE_TOL = 1e-9

VARIANTS = ("ZeroR", "NaiveBayes", "C45Tree", "RandomForest")

# CLI short names
TRAINERS = {
    "zeror": train_zeror,
    "nb": train_naive_bayes,
    "c45": train_c45,
    "rf": train_random_forest,
}
DISPLAY_NAMES = {"zeror": "ZeroR", "nb": "NaiveBayes", "c45": "J48 (C4.5)", "rf": "RandomForest"}


def predict(model: TrainedModel, x) -> str:
    if model.variant == "ZeroR":
        check_vector(model, x)
        return model.params["majority"]
    if model.variant == "NaiveBayes":
        scores = log_joint(model, x)
        # scores within TIE_TOL of the best count as ties; the earliest class wins
        best = np.flatnonzero(scores >= scores.max() - TIE_TOL * max(1.0, abs(scores.max())))
        return model.classes[int(best[0])]
    if model.variant == "C45Tree":
        return predict_c45(model, x)
    if model.variant == "RandomForest":
        return predict_forest(model, x)
    raise MLError(f"unknown model variant {model.variant!r}")


def predict_all(model: TrainedModel, X) -> list[str]:
    X = np.asarray(X, dtype=np.uint8).reshape(-1, model.n_features)
    return [predict(model, row) for row in X]


def model_to_dict(model: TrainedModel) -> dict:
    p = model.params
    if model.variant == "ZeroR":
        params = dict(p)
    elif model.variant == "NaiveBayes":
        params = {"priors": p["priors"].tolist(), "conditionals": p["conditionals"].tolist()}
    elif model.variant == "C45Tree":
        params = {"tree": p["tree"].to_dict()}
    elif model.variant == "RandomForest":
        params = {"trees": [t.to_dict() for t in p["trees"]], "tree_meta": p["tree_meta"]}
    else:
        raise MLError(f"unknown model variant {model.variant!r}")
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "variant": model.variant,
        "classes": list(model.classes),
        "n_features": model.n_features,
        "vocabulary": model.vocabulary,
        "config": model.config,
        "params": params,
    }


def model_from_dict(d: dict) -> TrainedModel:
    if d.get("format") != MODEL_FORMAT or d.get("version") != MODEL_VERSION:
        raise MLError(f"not a version-{MODEL_VERSION} {MODEL_FORMAT} document")
    variant, p = d["variant"], d["params"]
    if variant == "ZeroR":
        params = dict(p)
    elif variant == "NaiveBayes":
        n_features = d["n_features"]
        params = {"priors": np.array(p["priors"], dtype=np.float64),
                  "conditionals": np.array(p["conditionals"], dtype=np.float64).reshape(-1, n_features)}
    elif variant == "C45Tree":
        params = {"tree": TreeNode.from_dict(p["tree"])}
    elif variant == "RandomForest":
        params = {"trees": [TreeNode.from_dict(t) for t in p["trees"]], "tree_meta": p["tree_meta"]}
    else:
        raise MLError(f"unknown model variant {variant!r}")
    return TrainedModel(variant, tuple(d["classes"]), params, dict(d["config"]),
                        d.get("vocabulary"), int(d["n_features"]))


def model_to_json(model: TrainedModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True)


def model_from_json(text: str) -> TrainedModel:
    return model_from_dict(json.loads(text))
