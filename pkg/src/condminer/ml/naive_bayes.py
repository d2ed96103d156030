"""Bernoulli naive Bayes over binary presence vectors."""

import numpy as np

from condminer.ml.base import BadConfig, TrainedModel, check_vector, class_counts, prepare


def train_naive_bayes(X, y, alpha: float = 1.0, classes=None) -> TrainedModel:
    """Priors ``n_c / n`` and smoothed ``P(x_j=1|c) = (count_jc + alpha) / (n_c + 2 alpha)``.

    Classes declared in ``classes`` but absent from ``y`` get prior 0 and are
    never predicted.
    """
    if not alpha > 0:
        raise BadConfig(f"alpha must be positive, got {alpha}")
    X, y_idx, classes = prepare(X, y, classes)
    k = len(classes)
    n_c = class_counts(y_idx, k)
    onehot = np.eye(k, dtype=np.int64)[y_idx]
    count_jc = onehot.T @ X.astype(np.int64)  # k x d
    cond = (count_jc + alpha) / (n_c[:, None] + 2.0 * alpha)
    priors = n_c / n_c.sum()
    return TrainedModel("NaiveBayes", classes, {"priors": priors, "conditionals": cond},
                        config={"alpha": alpha}, n_features=X.shape[1])


def log_joint(model: TrainedModel, x) -> np.ndarray:
    """``log P(c) + sum_j log P(x_j|c)`` for every class, in class order."""
    x = check_vector(model, x).astype(np.float64)
    p = model.params["conditionals"]
    with np.errstate(divide="ignore"):
        log_prior = np.log(model.params["priors"])
    return log_prior + np.log(p) @ x + np.log1p(-p) @ (1.0 - x)
