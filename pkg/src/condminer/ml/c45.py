"""Unpruned C4.5-style decision tree on binary features.

Splits maximize gain ratio.  In the plain tree only features whose
information gain reaches the mean gain of the non-constant features are
considered.  Forests reuse :func:`grow_tree` with per-node feature sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from condminer.ml.base import BadConfig, TrainedModel, check_vector, class_counts, prepare

GAIN_EPS = 1e-10


@dataclass
class TreeNode:
    label: str
    counts: list[int]
    feature: int | None = None
    zero: TreeNode | None = None
    one: TreeNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        d = {"label": self.label, "counts": list(self.counts)}
        if not self.is_leaf:
            d |= {"feature": self.feature, "zero": self.zero.to_dict(), "one": self.one.to_dict()}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> TreeNode:
        if "feature" not in d:
            return cls(d["label"], list(d["counts"]))
        return cls(d["label"], list(d["counts"]), int(d["feature"]),
                   cls.from_dict(d["zero"]), cls.from_dict(d["one"]))

    def iter_nodes(self):
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            if not n.is_leaf:
                stack += [n.one, n.zero]


def entropy(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits along the last axis; all-zero rows give 0."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(total > 0, counts / total, 0.0)
        terms = np.where(p > 0, -p * np.log2(p), 0.0)
    return terms.sum(axis=-1)


def split_scores(X: np.ndarray, y_idx: np.ndarray, k: int):
    """Information gain, split information and gain ratio of every column.

    Returns ``(gain, split_info, ratio, n_one)``; ``ratio`` is 0 where
    ``split_info`` is 0 (constant columns).
    """
    n = X.shape[0]
    onehot = np.eye(k, dtype=np.int64)[y_idx]
    total = onehot.sum(axis=0)
    c1 = X.T.astype(np.int64) @ onehot  # d x k
    c0 = total[None, :] - c1
    n1 = c1.sum(axis=1)
    n0 = n - n1
    gain = entropy(total) - (n1 * entropy(c1) + n0 * entropy(c0)) / n
    split_info = entropy(np.stack([n0, n1], axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(split_info > 0, gain / split_info, 0.0)
    return gain, split_info, ratio, n1


def _best(ratio: np.ndarray, admissible: np.ndarray) -> int:
    cols = np.flatnonzero(admissible)
    return int(cols[np.argmax(ratio[cols])])  # first maximum -> lowest column index


def choose_split(X, y_idx, k, mean_filter=True, rng=None, m=None) -> int | None:
    """Column to split on, or None for a leaf.

    With ``rng`` and ``m`` set, columns are examined in a random permutation:
    the first ``m``, then one more at a time until some examined column has
    positive gain.  If no column anywhere has positive gain but some column is
    non-constant, the lowest such column is used so that any consistent
    training set can still be fit exactly.
    """
    n, d = X.shape
    gain, _, ratio, n1 = split_scores(X, y_idx, k)
    nonconst = (n1 > 0) & (n1 < n)
    if not nonconst.any():
        return None
    positive = nonconst & (gain > GAIN_EPS)
    if rng is not None:
        perm = rng.permutation(d)
        examined = np.zeros(d, dtype=bool)
        examined[perm[:m]] = True
        i = m
        while not (positive & examined).any() and i < d:
            examined[perm[i]] = True
            i += 1
        positive &= examined
    elif mean_filter and positive.any():
        mean_gain = gain[nonconst].mean()
        positive &= gain >= mean_gain - GAIN_EPS
    if positive.any():
        return _best(ratio, positive)
    return int(np.flatnonzero(nonconst)[0])


def grow_tree(X, y_idx, classes, min_leaf=2, mean_filter=True, rng=None, m=None) -> TreeNode:
    k = len(classes)

    def make(rows):
        counts = class_counts(y_idx[rows], k)
        return TreeNode(classes[int(np.argmax(counts))], counts.tolist())

    root_rows = np.arange(X.shape[0])
    root = make(root_rows)
    stack = [(root, root_rows)]
    while stack:
        node, rows = stack.pop()
        if np.count_nonzero(node.counts) <= 1 or len(rows) < 2 * min_leaf:
            continue
        f = choose_split(X[rows], y_idx[rows], k, mean_filter, rng, m)
        if f is None:
            continue
        on = X[rows, f] == 1
        node.feature = f
        node.zero, node.one = make(rows[~on]), make(rows[on])
        # one-branch first on the stack pops zero-branch first: depth-first, zero before one
        stack.append((node.one, rows[on]))
        stack.append((node.zero, rows[~on]))
    return root


def tree_predict(root: TreeNode, x: np.ndarray) -> str:
    node = root
    while not node.is_leaf:
        node = node.one if x[node.feature] else node.zero
    return node.label


def train_c45(X, y, min_leaf: int = 2, mean_filter: bool = True, classes=None) -> TrainedModel:
    if min_leaf < 1:
        raise BadConfig(f"min_leaf must be >= 1, got {min_leaf}")
    X, y_idx, classes = prepare(X, y, classes)
    root = grow_tree(X, y_idx, classes, min_leaf, mean_filter)
    return TrainedModel("C45Tree", classes, {"tree": root},
                        config={"min_leaf": min_leaf, "mean_filter": mean_filter},
                        n_features=X.shape[1])


def predict_c45(model: TrainedModel, x) -> str:
    return tree_predict(model.params["tree"], check_vector(model, x))
