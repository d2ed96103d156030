"""Stratified k-fold cross-validation and precision / recall / F-measure reports."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from condminer.corpus import Dataset
from condminer.errors import DataError, InvariantViolation
from condminer.features import build_vocabulary, extract_features, vectorize_all
from condminer.ml import DISPLAY_NAMES, TRAINERS, BadConfig, predict_all

REPORT_FORMAT = "condminer-report"
REPORT_VERSION = 1

FOCUS_TITLES = {"CA": "Condition-Action", "POS": "Condition-Action", "COND": "Condition"}


class EvalError(DataError):
    pass


class TooFewInstances(EvalError):
    pass


class EmptyMatrix(EvalError):
    pass


@dataclass(frozen=True)
class ClassifierConfig:
    name: str = "rf"  # zeror | nb | c45 | rf
    alpha: float = 1.0
    min_leaf: int | None = None  # None: 2 for c45, 1 for rf
    trees: int = 100
    features_per_node: int | None = None
    seed: int = 42

    def __post_init__(self):
        if self.name not in TRAINERS:
            raise BadConfig(f"unknown classifier {self.name!r}; expected one of {sorted(TRAINERS)}")

    def hyperparameters(self) -> dict:
        if self.name == "nb":
            return {"alpha": self.alpha}
        if self.name == "c45":
            return {"min_leaf": 2 if self.min_leaf is None else self.min_leaf}
        if self.name == "rf":
            return {"n_trees": self.trees, "features_per_node": self.features_per_node,
                    "min_leaf": 1 if self.min_leaf is None else self.min_leaf, "seed": self.seed}
        return {}

    def train(self, X, y, classes):
        return TRAINERS[self.name](X, y, classes=classes, **self.hyperparameters())


def stratified_folds(labels: Sequence[str], ids: Sequence[str], k: int = 10, seed: int = 42,
                     classes: Sequence[str] | None = None) -> np.ndarray:
    """Fold index for each row, in input order.

    Rows are sorted by id, each class is shuffled with a generator seeded by
    ``seed``, and classes are dealt round-robin in class order, each one
    continuing at the fold where the previous class stopped.
    """
    n = len(labels)
    if k < 2:
        raise EvalError(f"fold count must be >= 2, got {k}")
    if n < k:
        raise TooFewInstances(f"{n} instances cannot fill {k} folds")
    if classes is None:
        classes = sorted(set(labels))
    order = sorted(range(n), key=lambda i: ids[i])
    rng = np.random.default_rng(seed)
    folds = np.full(n, -1, dtype=np.int64)
    offset = 0
    for c in classes:
        members = np.array([i for i in order if labels[i] == c], dtype=np.int64)
        members = members[rng.permutation(len(members))]
        folds[members] = (offset + np.arange(len(members))) % k
        offset = (offset + len(members)) % k
    if (folds < 0).any():
        raise EvalError("labels outside the declared class list")
    return folds


def compute_metrics(confusion, classes: Sequence[str]) -> dict:
    """Metrics from a gold x predicted count matrix; 0/0 cells count as 0."""
    cm = np.asarray(confusion, dtype=np.int64)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or cm.shape[0] == 0 or cm.sum() == 0:
        raise EmptyMatrix(f"cannot score confusion matrix of shape {cm.shape} and total {cm.sum()}")
    if cm.shape[0] != len(classes):
        raise EvalError("confusion matrix does not match class list")
    tp = np.diag(cm).astype(np.float64)
    predicted = cm.sum(axis=0)
    gold = cm.sum(axis=1)
    total = cm.sum()
    precision = np.divide(tp, predicted, out=np.zeros_like(tp), where=predicted > 0)
    recall = np.divide(tp, gold, out=np.zeros_like(tp), where=gold > 0)
    denom = precision + recall
    f = np.divide(2 * precision * recall, denom, out=np.zeros_like(tp), where=denom > 0)
    per_class = {c: {"precision": float(precision[i]), "recall": float(recall[i]),
                     "f_measure": float(f[i]), "support": int(gold[i])}
                 for i, c in enumerate(classes)}
    return {
        "per_class": per_class,
        "accuracy": float(tp.sum() / total),
        "weighted_precision": float((gold / total) @ precision),
    }


@dataclass
class EvaluationReport:
    classifier: str
    classes: list[str]
    focus: str
    confusion: list[list[int]]
    per_class: dict
    accuracy: float
    weighted_precision: float
    folds: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(sum(map(sum, self.confusion)))

    def to_dict(self) -> dict:
        return {"format": REPORT_FORMAT, "version": REPORT_VERSION} | asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> EvaluationReport:
        if d.get("format") != REPORT_FORMAT or d.get("version") != REPORT_VERSION:
            raise EvalError(f"not a version-{REPORT_VERSION} {REPORT_FORMAT} document")
        fields = ("classifier", "classes", "focus", "confusion", "per_class", "accuracy",
                  "weighted_precision", "folds", "config")
        return cls(**{f: d[f] for f in fields})


def reports_to_json(reports: Sequence[EvaluationReport]) -> str:
    doc = {"format": REPORT_FORMAT + "-set", "version": REPORT_VERSION,
           "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def reports_from_json(text: str) -> list[EvaluationReport]:
    doc = json.loads(text)
    if doc.get("format") != REPORT_FORMAT + "-set":
        raise EvalError("not a report document")
    return [EvaluationReport.from_dict(d) for d in doc["reports"]]


def render_table(reports: Sequence[EvaluationReport], title: str = "", total: str = "weighted_precision") -> str:
    """One row per classifier: focus-class precision, recall, F-measure, then the Total column."""
    if total not in ("weighted_precision", "accuracy"):
        raise ValueError(f"unknown total column {total!r}")
    focus = reports[0].focus if reports else "CA"
    span = FOCUS_TITLES.get(focus, focus)
    rows = [["", "Precision", "Recall", "F-measure", "Precision" if total == "weighted_precision" else "Accuracy"]]
    for r in reports:
        m = r.per_class[r.focus]
        rows.append([r.classifier, f"{m['precision']:.3f}", f"{m['recall']:.3f}",
                     f"{m['f_measure']:.3f}", f"{getattr(r, total):.3f}"])
    widths = [max(len(row[i]) for row in rows + [[title]]) if i == 0 else max(len(row[i]) for row in rows)
              for i in range(5)]
    inner = sum(widths[1:4]) + 6  # three columns joined by " | "
    if len(span) > inner:
        widths[3] += len(span) - inner
        inner = len(span)
    widths[4] = max(widths[4], len("Total"))
    lines = [" | ".join([title.ljust(widths[0]), span.center(inner), "Total".rjust(widths[4])]).rstrip()]
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append(" | ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def cross_validate(ds: Dataset, config: ClassifierConfig, k: int = 10, seed: int = 42,
                   n_jobs: int = 1) -> EvaluationReport:
    """k-fold CV; vocabulary and model are rebuilt from the training folds only."""
    sentences = sorted(ds.sentences, key=lambda s: s.id)
    classes = list(ds.classes)
    labels = [ds.mapping(s.label) for s in sentences]
    ids = [s.id for s in sentences]
    bags = [extract_features(s.tree) for s in sentences]
    folds = stratified_folds(labels, ids, k, seed, classes)
    lookup = {c: i for i, c in enumerate(classes)}

    def run_fold(f):
        train = np.flatnonzero(folds != f)
        test = np.flatnonzero(folds == f)
        vocab = build_vocabulary(bags[i] for i in train)
        X_train = vectorize_all([bags[i] for i in train], vocab)
        X_test = vectorize_all([bags[i] for i in test], vocab)
        model = config.train(X_train, [labels[i] for i in train], classes)
        cm = np.zeros((len(classes), len(classes)), dtype=np.int64)
        for i, pred in zip(test, predict_all(model, X_test)):
            cm[lookup[labels[i]], lookup[pred]] += 1
        return cm

    if n_jobs > 1:
        with ThreadPoolExecutor(n_jobs) as pool:
            fold_cms = list(pool.map(run_fold, range(k)))
    else:
        fold_cms = [run_fold(f) for f in range(k)]
    confusion = sum(fold_cms)
    if confusion.sum() != len(sentences):
        raise InvariantViolation(f"confusion matrix sums to {confusion.sum()}, dataset has {len(sentences)}")
    metrics = compute_metrics(confusion, classes)
    echo = {"classifier": config.name, "hyperparameters": config.hyperparameters(),
            "seed": seed, "folds": k, "label_map": ds.mapping.name, "n": len(sentences)}
    return EvaluationReport(
        classifier=DISPLAY_NAMES[config.name],
        classes=classes,
        focus=ds.mapping.focus,
        confusion=confusion.tolist(),
        per_class=metrics["per_class"],
        accuracy=metrics["accuracy"],
        weighted_precision=metrics["weighted_precision"],
        folds=[{"fold": f, "size": int(cm.sum()), "confusion": cm.tolist()} for f, cm in enumerate(fold_cms)],
        config=echo,
    )
