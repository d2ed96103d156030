"""Random forest of C4.5-style trees with bootstrap sampling and per-node feature sampling.

Tree ``b`` draws its bootstrap sample and every node's feature sample from
its own generator seeded with ``(seed, b)``, so the forest does not depend
on the order (or thread) in which trees are grown.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from condminer.ml.base import BadConfig, TrainedModel, check_vector, class_counts, prepare
from condminer.ml.c45 import grow_tree, tree_predict


def default_features_per_node(d: int) -> int:
    return int(math.floor(math.log2(d))) + 1


def tree_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def grow_forest_tree(X, y_idx, classes, index, seed, m, min_leaf, bootstrap):
    rng = tree_rng(seed, index)
    if bootstrap:
        rows = rng.integers(0, X.shape[0], size=X.shape[0])
        X, y_idx = X[rows], y_idx[rows]
    return grow_tree(X, y_idx, classes, min_leaf, mean_filter=False, rng=rng, m=m)


def train_random_forest(X, y, n_trees: int = 100, features_per_node: int | None = None,
                        seed: int = 0, min_leaf: int = 1, bootstrap: bool = True,
                        n_jobs: int = 1, classes=None) -> TrainedModel:
    if n_trees < 1:
        raise BadConfig(f"tree count must be >= 1, got {n_trees}")
    if min_leaf < 1:
        raise BadConfig(f"min_leaf must be >= 1, got {min_leaf}")
    if not 0 <= seed < 2**64:
        raise BadConfig(f"seed must be an unsigned 64-bit value, got {seed}")
    X, y_idx, classes = prepare(X, y, classes)
    d = X.shape[1]
    if d < 1:
        raise BadConfig("random forest needs at least one feature")
    m = default_features_per_node(d) if features_per_node is None else features_per_node
    if m < 1:
        raise BadConfig(f"features per node must be >= 1, got {m}")
    m = min(m, d)

    def grow(b):
        return grow_forest_tree(X, y_idx, classes, b, seed, m, min_leaf, bootstrap)

    if n_jobs > 1:
        with ThreadPoolExecutor(n_jobs) as pool:
            trees = list(pool.map(grow, range(n_trees)))
    else:
        trees = [grow(b) for b in range(n_trees)]
    meta = [{"tree_index": b, "rng_key": [seed, b], "features_per_node": m} for b in range(n_trees)]
    config = {"n_trees": n_trees, "features_per_node": m, "seed": seed,
              "min_leaf": min_leaf, "bootstrap": bootstrap}
    return TrainedModel("RandomForest", classes, {"trees": trees, "tree_meta": meta},
                        config=config, n_features=d)


def predict_forest(model: TrainedModel, x) -> str:
    x = check_vector(model, x)
    lookup = {c: i for i, c in enumerate(model.classes)}
    votes = [lookup[tree_predict(t, x)] for t in model.params["trees"]]
    counts = class_counts(np.array(votes), len(model.classes))
    return model.classes[int(np.argmax(counts))]
